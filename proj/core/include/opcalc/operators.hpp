// SPDX-License-Identifier: Apache-2.0
//
// Dense complex matrix backbone: resolvents, exponentials, singular values,
// and growth-bound fitting for matrix semigroups T(t) = exp(-tA).  The
// operator norm throughout this header is the spectral norm.

#ifndef OPCALC_OPERATORS_HPP
#define OPCALC_OPERATORS_HPP

#include <Eigen/Dense>
#include <vector>

#include "opcalc/errors.hpp"
#include "opcalc/types.hpp"

namespace opcalc {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

double spectral_norm(const ComplexMatrix& m);

// sigma_min(m) = min over unit x of |m x|_2.  For Euclidean spaces this is
// the best constant c in a lower bound |m x| >= c |x|.  Returns 0 for
// singular input.
double smallest_singular_value(const ComplexMatrix& m);

// (lambda I - A)^{-1} via pivoted LU.  Throws SingularResolvent when the
// factorization reports reciprocal condition below 1e-14, signalling that
// lambda sits on (or numerically on) the spectrum.
ComplexMatrix resolvent(const ComplexMatrix& a, Complex lambda);

// exp(t a).  Normal matrices (|aa* - a*a| <= 1e-12 |a|^2) go through the
// eigendecomposition; everything else uses scaling-and-squaring.  Throws
// Overflow when |t a| exceeds the safe range for double exponentials.
ComplexMatrix matrix_exp(const ComplexMatrix& a, double t = 1.0);

ComplexVector eigenvalues(const ComplexMatrix& a);
bool is_normal(const ComplexMatrix& a);

// Condition number of the eigenvector matrix from a numerical
// eigendecomposition; +inf when the solver fails to produce one.
double eigenvector_condition(const ComplexMatrix& a);

// V f(Lambda) V^{-1} for numerically diagonalizable a.  Throws
// InvalidParameters when the eigenvector condition exceeds cond_limit.
ComplexMatrix apply_function_eigen(const ComplexMatrix& a, const ScalarFunction& f,
                                   double cond_limit = 1e6);

struct GrowthFit {
  double m;      // prefactor, clamped to >= 1
  double omega;  // exponential rate
};

// Fits |exp(-t a)| <= m e^{omega t} on the given grid.  omega is the largest
// pairwise slope of log|T(t)| (an upper envelope rather than least squares),
// so the fitted bound holds at every grid point exactly.
GrowthFit growth_bound_fit(const ComplexMatrix& a, const std::vector<double>& t_grid);

struct SemigroupModel {
  ComplexMatrix generator_negative;  // A with T(t) = exp(-tA)
  GrowthFit fit;
};

SemigroupModel make_semigroup_model(const ComplexMatrix& a, const std::vector<double>& t_grid);

struct SectorialitySampleSpec {
  int ray_count = 7;      // rays between the sector edge and the negative axis
  double r_min = 1e-4;
  double r_max = 1e4;
  double ratio = 1.1;
};

// max |lambda R(lambda, a)| over a deterministic sample of lambda outside the
// closed sector of half-angle sigma (rays of larger angle plus the negative
// real axis, geometric radii).  A lower estimate of the true supremum.
// Throws SpectrumOutsideSector when an eigenvalue violates |arg| < sigma.
double sectoriality_constant(const ComplexMatrix& a, double sigma,
                             const SectorialitySampleSpec& spec = {});

}  // namespace opcalc

#endif  // OPCALC_OPERATORS_HPP
