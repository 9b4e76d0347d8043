// SPDX-License-Identifier: Apache-2.0
//
// Quantitative semigroup analysis for T(t) = exp(-tA): exponential lower
// bounds from a single-time lower bound, submultiplicativity of the inverse
// lower-bound function gamma, and the scalar norm formulas of the
// upper-triangular multiplication-operator family, including Young
// conjugates.

#ifndef OPCALC_SEMIGROUP_HPP
#define OPCALC_SEMIGROUP_HPP

#include <string>

#include "opcalc/operators.hpp"

namespace opcalc {

// nu = (1/t0) ln(c/alpha).  Requires t0 > 0, c > 0, alpha > 1.
double nu_rate(double t0, double c, double alpha);

struct LowerBoundCertificate {
  double t0 = 0;
  double c = 0;      // sigma_min(T(t0))
  double alpha = 0;  // > 1
  double nu = 0;     // (1/t0) ln(c/alpha)
  double m = 0;      // min over grid of sigma_min(T(t)) e^{-nu t}
  std::vector<double> grid;
  double m_refined = 0;         // same minimum on the 2x-density grid
  double refinement_change = 0; // |m - m_refined| / m
  bool stable = false;          // refinement_change < 1%
  // Negative-time estimate on the inverses: checks
  //   |T(n t0 + delta)^{-1}| <= K c^{-n},  K = max over delta of |T(delta)^{-1}|,
  // the alpha > 1 version then holds a fortiori.  Margin is the worst
  // observed ratio of the two sides (<= 1 passes).
  double inverse_bound_margin = 0;
  bool pass = false;
};

LowerBoundCertificate exponential_lower_bound_check(const ComplexMatrix& a, double t0,
                                                    double alpha,
                                                    const std::vector<double>& t_grid);

struct GammaReport {
  double worst_ratio;  // max of gamma(t+s) / (gamma(t) gamma(s))
  bool pass;           // worst_ratio <= 1 + 1e-10
  long pairs_checked;
};

// gamma(t) = 1/sigma_min(exp(-tA)); checks gamma(t+s) <= gamma(t) gamma(s)
// for all grid pairs whose sum lands on the grid.
GammaReport gamma_submultiplicativity_check(const ComplexMatrix& a,
                                            const std::vector<double>& t_grid);

struct PhiSpec {
  std::string name;
  std::function<double(double)> phi;
  std::function<double(double)> dphi;
};

// Catalog: x^2, x^2/2, x log(1+x), x log(1+x) log(1+log(1+x)).
const std::vector<PhiSpec>& phi_catalog();
// Throws MalformedInput for unknown names.
const PhiSpec& phi_by_name(const std::string& name);

struct PhiValidation {
  bool phi0_zero;
  bool dphi0_zero;
  bool dphi_increasing;
  bool dphi_log_bounded;  // phi'(log x) <= x sampled on (1, 1e3]
  bool dphi_diverges;
  bool ok() const {
    return phi0_zero && dphi0_zero && dphi_increasing && dphi_log_bounded && dphi_diverges;
  }
};

PhiValidation validate_phi(const PhiSpec& spec);

struct YoungResult {
  double value;
  double maximizer;
};

// phi*(s) = sup_{x>0} (s x - phi(x)) by bisection on phi'(x) = s; requires
// the maximizer interior to (0, x_max), else MaximizerAtBoundary.
YoungResult young_conjugate_full(const PhiSpec& spec, double s, double x_max);
double young_conjugate(const PhiSpec& spec, double s, double x_max = 1e3);

// The three routes to sup_x e^{-t phi(x)} max{1, t e^x} for t in (0,1):
// direct grid maximization, the reduction to x >= log(1/t), and the Young
// form max{1, t exp(t phi*(1/t))}.  Values can overflow double for fast
// conjugate growth, so logs are carried alongside.
struct Example32Routes {
  double direct;
  double reduced;
  double young;
  double log_direct;
  double log_reduced;
  double log_young;
};

// Throws HypothesesViolated unless t is in (0,1) and validate_phi passes.
Example32Routes example32_routes(const PhiSpec& spec, double t, int grid_points = 10000);
double example32_norm(const PhiSpec& spec, double t, int grid_points = 10000);

struct IdentityCheckRow {
  double t;
  double constrained;  // sup over x >= log(1/t) of (x/t - phi(x))
  double conjugate;    // phi*(1/t)
  double maximizer;    // unconstrained maximizer x0
  bool ok;             // equality to 1e-6 relative and x0 >= log(1/t)
};

std::vector<IdentityCheckRow> example32_identity_check(const PhiSpec& spec,
                                                       const std::vector<double>& t_list);

}  // namespace opcalc

#endif  // OPCALC_SEMIGROUP_HPP
