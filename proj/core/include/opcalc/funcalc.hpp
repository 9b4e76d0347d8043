// SPDX-License-Identifier: Apache-2.0
//
// Contour-quadrature functional calculus f(A) on sectors, vertical strips,
// half-planes and sector/half-plane unions.
//
// All calculi evaluate (1/2πi) ∫ f(λ) R(λ,A) dλ over the oriented boundary
// produced by boundary_contour (region to the left, winding +1 around the
// spectrum), which reproduces the scalar oracle f(a) with a plus sign.  On
// rays the quadrature substitutes t = e^s, on full vertical lines
// y = sinh(s), and on finite vertical pieces a tanh-sinh map, so the
// trapezoid rule converges exponentially; nodes are doubled until two
// successive totals agree within tol in the spectral norm.

#ifndef OPCALC_FUNCALC_HPP
#define OPCALC_FUNCALC_HPP

#include <cstdint>

#include "opcalc/holo.hpp"
#include "opcalc/operators.hpp"

namespace opcalc {

struct QuadratureResult {
  ComplexMatrix value;
  double error_estimate = 0.0;  // last node-doubling difference
  long nodes_used = 0;
  bool converged = false;  // converged implies error_estimate <= tol
};

struct QuadratureLimits {
  long node_cap = 1 << 20;
  int initial_nodes = 17;      // per segment, first refinement level
  double max_reach = 80.0;     // cap on |s| for the log/sinh substitutions
};

using MatrixIntegrand = std::function<ComplexMatrix(Complex)>;

// Oriented contour integral of a matrix-valued integrand (no 1/2πi factor).
QuadratureResult integrate_contour(const Contour& contour, const MatrixIntegrand& g,
                                   int dim, double tol, const QuadratureLimits& lim = {});

// f(A) over the boundary of Sector(eta).  Preconditions: every eigenvalue
// satisfies |arg| < eta and 0 is off the spectrum (SpectrumOnContour),
// f.decay_exponent > 0 (NoDecay); when f.domain is a sector its angle must
// exceed eta.
QuadratureResult fc_sector(const HoloFunction& f, const ComplexMatrix& a, double eta,
                           double tol);

// f(B) over the two vertical lines Re z = ±sigma, strip to the left.
QuadratureResult fc_strip(const HoloFunction& f, const ComplexMatrix& b, double sigma,
                          double tol);

// f(A) over the single vertical line Re z = -eta.  The line is traversed so
// that the half-plane lies to the left; combined with the +1/2πi prefactor
// this reproduces the 1x1 oracle f(a), which pins the sign convention.
// Spectrum must stay at distance >= 10 tol from the line.
QuadratureResult fc_halfplane(const HoloFunction& f, const ComplexMatrix& a, double eta,
                              double tol);

// f(A) over the boundary of KRegion(sigma', a_vertex, -theta_prime).
QuadratureResult fc_kregion(const HoloFunction& f, const ComplexMatrix& a,
                            double sigma_prime, double a_vertex, double theta_prime,
                            double tol);

// Dispatch on region kind; the region parametrizes the integration contour.
QuadratureResult fc(const HoloFunction& f, const ComplexMatrix& a, const Region& region,
                    double tol);

struct ConvergenceLemmaReport {
  std::vector<int> n_values;
  std::vector<double> deviations;   // |f_n(A) - f(A)_oracle|
  std::vector<double> norm_ratios;  // |f_n(A)| / sup|f|
  bool monotone = false;
  bool final_below_tol = false;
  double uniform_bound = 0.0;  // max over n of norm_ratios
};

// Computes f_n(A) = (tau_n^2 f)(A) through fc_halfplane for n in
// {1,2,4,...,64} and compares with the eigendecomposition oracle.  f must be
// bounded on HP(-eta) and the spectrum must lie in the open half-plane.
ConvergenceLemmaReport convergence_lemma_check(const HoloFunction& f_bounded,
                                               const ComplexMatrix& a, double eta,
                                               double tol);

// |(fg)(A) - f(A) g(A)| / (|f(A)| |g(A)| + 1e-300) through the calculus
// selected by `region`.
double multiplicativity_check(const HoloFunction& f, const HoloFunction& g,
                              const ComplexMatrix& a, const Region& region, double tol);

struct ShiftIdentityReport {
  double defect;
  double lhs_norm;
  long nodes_used;
};

// Three convergent integrals over Γ = ∂K: with A_eta = A + eta,
//   (1/2πi) ∫_Γ f R(·,A) = f(A_eta) - (eta/2πi) ∫_Γ f R(·,A_eta) R(·,A),
// which is the resolvent identity
//   R(λ,A) - R(λ,A+eta) = -eta R(λ,A+eta) R(λ,A)
// integrated term by term.  Requires the spectra of A and A+eta strictly
// inside K.
ShiftIdentityReport resolvent_shift_identity_check(const HoloFunction& f,
                                                   const ComplexMatrix& a, double eta_shift,
                                                   const KRegion& k, double tol);

struct ProbeSpec {
  int count = 24;  // >= 20 rational test functions
  std::uint64_t seed = 1;
  GridSpec grid = {};
};

// Empirical lower bound for the calculus constant: max over a seeded rational
// catalog (poles outside the region) of |f(A)| / sup-estimate of |f| on the
// region.  The integration contour is placed automatically between the
// spectrum and the region boundary.
double calculus_bound_probe(const ComplexMatrix& a, const Region& region,
                            const ProbeSpec& spec, double tol);

}  // namespace opcalc

#endif  // OPCALC_FUNCALC_HPP
