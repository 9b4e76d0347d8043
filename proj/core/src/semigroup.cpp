// SPDX-License-Identifier: Apache-2.0

#include "opcalc/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace opcalc {

double nu_rate(double t0, double c, double alpha) {
  if (!(t0 > 0.0) || !(c > 0.0) || !(alpha > 1.0)) {
    throw InvalidParameters("nu_rate: need t0 > 0, c > 0, alpha > 1");
  }
  return std::log(c / alpha) / t0;
}

LowerBoundCertificate exponential_lower_bound_check(const ComplexMatrix& a, double t0,
                                                    double alpha,
                                                    const std::vector<double>& t_grid) {
  if (t_grid.empty()) throw InvalidParameters("exponential_lower_bound_check: empty grid");
  for (double t : t_grid) {
    if (!(t > 0.0)) throw InvalidParameters("exponential_lower_bound_check: grid must be positive");
  }
  LowerBoundCertificate cert;
  cert.t0 = t0;
  cert.alpha = alpha;
  cert.grid = t_grid;
  cert.c = smallest_singular_value(matrix_exp(a, -t0));
  cert.nu = nu_rate(t0, cert.c, alpha);

  const auto envelope_min = [&](const std::vector<double>& grid) {
    double m = std::numeric_limits<double>::infinity();
    for (double t : grid) {
      m = std::min(m, smallest_singular_value(matrix_exp(a, -t)) * std::exp(-cert.nu * t));
    }
    return m;
  };
  cert.m = envelope_min(t_grid);

  std::vector<double> refined = t_grid;
  std::vector<double> sorted = t_grid;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    refined.push_back(0.5 * (sorted[i] + sorted[i + 1]));
  }
  cert.m_refined = envelope_min(refined);
  cert.refinement_change = std::abs(cert.m - cert.m_refined) / std::max(cert.m, 1e-300);
  cert.stable = cert.refinement_change < 0.01;

  // Negative-time growth of the inverses: with K = max |T(delta)^{-1}|
  // over delta in [0, t0] the exact matrix bound is
  // |T(n t0 + delta)^{-1}| <= K (1/c)^n, and replacing 1/c by alpha/c only
  // enlarges the right side.
  double k_const = 0.0;
  const int delta_steps = 16;
  for (int j = 0; j <= delta_steps; ++j) {
    const double delta = t0 * j / delta_steps;
    k_const = std::max(k_const, spectral_norm(matrix_exp(a, delta)));
  }
  double worst = 0.0;
  for (int n = 0; n <= 3; ++n) {
    for (int j = 1; j <= delta_steps; ++j) {
      const double delta = t0 * j / delta_steps;
      const double lhs = spectral_norm(matrix_exp(a, n * t0 + delta));
      const double rhs = k_const * std::pow(1.0 / cert.c, n);
      worst = std::max(worst, lhs / rhs);
    }
  }
  cert.inverse_bound_margin = worst;
  cert.pass = cert.m > 0.0 && cert.stable && worst <= 1.0 + 1e-10;
  return cert;
}

GammaReport gamma_submultiplicativity_check(const ComplexMatrix& a,
                                            const std::vector<double>& t_grid) {
  for (double t : t_grid) {
    if (!(t > 0.0)) throw InvalidParameters("gamma_submultiplicativity_check: positive grid");
  }
  std::vector<double> gamma(t_grid.size());
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    gamma[i] = 1.0 / smallest_singular_value(matrix_exp(a, -t_grid[i]));
  }
  GammaReport rep{0.0, true, 0};
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    for (std::size_t j = i; j < t_grid.size(); ++j) {
      const double sum = t_grid[i] + t_grid[j];
      for (std::size_t k = 0; k < t_grid.size(); ++k) {
        if (std::abs(t_grid[k] - sum) <= 1e-12 * std::max(1.0, sum)) {
          rep.worst_ratio = std::max(rep.worst_ratio, gamma[k] / (gamma[i] * gamma[j]));
          rep.pairs_checked++;
          break;
        }
      }
    }
  }
  rep.pass = rep.worst_ratio <= 1.0 + 1e-10;
  return rep;
}

const std::vector<PhiSpec>& phi_catalog() {
  static const std::vector<PhiSpec> catalog = {
      {"xsq", [](double x) { return x * x; }, [](double x) { return 2.0 * x; }},
      {"xsq_half", [](double x) { return 0.5 * x * x; }, [](double x) { return x; }},
      {"xlog", [](double x) { return x * std::log1p(x); },
       [](double x) { return std::log1p(x) + x / (1.0 + x); }},
      {"xloglog",
       [](double x) {
         const double l = std::log1p(x);
         return x * l * std::log1p(l);
       },
       [](double x) {
         const double l = std::log1p(x);
         const double ll = std::log1p(l);
         const double dl = 1.0 / (1.0 + x);
         return l * ll + x * dl * (ll + l / (1.0 + l));
       }},
  };
  return catalog;
}

const PhiSpec& phi_by_name(const std::string& name) {
  for (const auto& spec : phi_catalog()) {
    if (spec.name == name) return spec;
  }
  throw MalformedInput("phi: unknown catalog name '" + name + "'");
}

PhiValidation validate_phi(const PhiSpec& spec) {
  PhiValidation v{};
  v.phi0_zero = std::abs(spec.phi(0.0)) <= 1e-12;
  v.dphi0_zero = std::abs(spec.dphi(0.0)) <= 1e-12;
  v.dphi_increasing = true;
  double prev = spec.dphi(1e-6);
  for (double x = 1e-3; x <= 1e3; x *= 1.25) {
    const double cur = spec.dphi(x);
    if (cur <= prev) v.dphi_increasing = false;
    prev = cur;
  }
  v.dphi_log_bounded = true;
  for (double x = 1.0 + 1e-6; x <= 1e3; x *= 1.1) {
    if (spec.dphi(std::log(x)) > x * (1.0 + 1e-12)) v.dphi_log_bounded = false;
  }
  v.dphi_diverges = spec.dphi(1e8) > 10.0;
  return v;
}

YoungResult young_conjugate_full(const PhiSpec& spec, double s, double x_max) {
  if (!(s > 0.0)) throw InvalidParameters("young_conjugate: s must be positive");
  if (!(x_max > 0.0)) throw InvalidParameters("young_conjugate: x_max must be positive");
  if (spec.dphi(x_max) < s) {
    throw MaximizerAtBoundary("young_conjugate: phi'(x_max) < s, maximizer not interior");
  }
  // phi' is strictly increasing with phi'(0) = 0 < s, so s x - phi(x) has a
  // unique interior critical point located by bisection on phi'(x) = s.
  double lo = 0.0, hi = x_max;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (spec.dphi(mid) < s) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-14 * std::max(1.0, hi)) break;
  }
  const double x0 = 0.5 * (lo + hi);
  return {s * x0 - spec.phi(x0), x0};
}

double young_conjugate(const PhiSpec& spec, double s, double x_max) {
  return young_conjugate_full(spec, s, x_max).value;
}

namespace {

// x_max large enough that the maximizer of s x - phi(x) is interior.  Slowly
// growing derivatives (iterated logs) push the maximizer to exp-scale x, so
// the cap is generous.
double adaptive_x_max(const PhiSpec& spec, double s) {
  double x_max = 50.0;
  while (spec.dphi(x_max) <= s) {
    x_max *= 2.0;
    if (x_max > 1e200) {
      throw MaximizerAtBoundary("young_conjugate: phi' does not reach s below 1e200");
    }
  }
  return x_max;
}

// Golden-section polish of a concave objective around a bracketing interval.
double golden_max(const std::function<double(double)>& f, double lo, double hi) {
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int iter = 0; iter < 200 && (b - a) > 1e-12 * std::max(1.0, std::abs(b)); ++iter) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = f(x1);
    }
  }
  return std::max(f(0.5 * (a + b)), std::max(f1, f2));
}

}  // namespace

Example32Routes example32_routes(const PhiSpec& spec, double t, int grid_points) {
  if (!(t > 0.0 && t < 1.0)) throw HypothesesViolated("example32: t must lie in (0,1)");
  if (!validate_phi(spec).ok()) throw HypothesesViolated("example32: phi hypotheses fail");

  const double s = 1.0 / t;
  const YoungResult young = young_conjugate_full(spec, s, adaptive_x_max(spec, s));
  const double x_max = std::max(50.0, 3.0 * young.maximizer);
  const double log_t = std::log(t);

  // log of e^{-t phi(x)} max{1, t e^x}
  const auto log_term = [&](double x) {
    return -t * spec.phi(x) + std::max(0.0, log_t + x);
  };
  // log of t e^{x - t phi(x)}
  const auto log_grow = [&](double x) { return log_t + x - t * spec.phi(x); };

  double best_direct = 0.0;
  double best_x = 0.0;
  for (int i = 0; i <= grid_points; ++i) {
    const double x = x_max * i / grid_points;
    const double v = log_term(x);
    if (v > best_direct) {
      best_direct = v;
      best_x = x;
    }
  }
  // The grid brackets the maximum; a golden-section polish sharpens it to
  // solver accuracy (a uniform grid alone is too coarse when the maximizer
  // sits at large x).
  const double h = x_max / grid_points;
  best_direct = std::max(
      best_direct, golden_max(log_term, std::max(0.0, best_x - h), std::min(x_max, best_x + h)));

  const double x_cut = std::log(1.0 / t);
  double best_grow = -std::numeric_limits<double>::infinity();
  double best_gx = x_cut;
  for (int i = 0; i <= grid_points; ++i) {
    const double x = x_cut + (x_max - x_cut) * i / grid_points;
    if (x < x_cut) continue;
    const double v = log_grow(x);
    if (v > best_grow) {
      best_grow = v;
      best_gx = x;
    }
  }
  const double hg = (x_max - x_cut) / grid_points;
  best_grow = std::max(best_grow, golden_max(log_grow, std::max(x_cut, best_gx - hg),
                                             std::min(x_max, best_gx + hg)));

  Example32Routes out;
  out.log_direct = best_direct;
  out.log_reduced = std::max(0.0, best_grow);
  out.log_young = std::max(0.0, log_t + t * young.value);
  out.direct = std::exp(out.log_direct);
  out.reduced = std::exp(out.log_reduced);
  out.young = std::exp(out.log_young);
  return out;
}

double example32_norm(const PhiSpec& spec, double t, int grid_points) {
  return example32_routes(spec, t, grid_points).direct;
}

std::vector<IdentityCheckRow> example32_identity_check(const PhiSpec& spec,
                                                       const std::vector<double>& t_list) {
  if (!validate_phi(spec).ok()) throw HypothesesViolated("example32: phi hypotheses fail");
  std::vector<IdentityCheckRow> rows;
  rows.reserve(t_list.size());
  for (double t : t_list) {
    if (!(t > 0.0 && t < 1.0)) throw HypothesesViolated("example32: t must lie in (0,1)");
    const double s = 1.0 / t;
    const double x_cut = std::log(1.0 / t);
    const double x_max = adaptive_x_max(spec, s);
    const YoungResult young = young_conjugate_full(spec, s, x_max);

    // Constrained maximization of s x - phi(x) over x >= log(1/t), computed
    // by golden section so the two sides of the identity come from separate
    // numerical routes.
    const double constrained =
        golden_max([&](double x) { return s * x - spec.phi(x); }, x_cut, x_max);

    IdentityCheckRow row;
    row.t = t;
    row.constrained = constrained;
    row.conjugate = young.value;
    row.maximizer = young.maximizer;
    row.ok = std::abs(constrained - young.value) <=
                 1e-6 * std::max(1.0, std::abs(young.value)) &&
             young.maximizer >= x_cut - 1e-9;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace opcalc
