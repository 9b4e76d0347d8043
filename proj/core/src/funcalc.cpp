// SPDX-License-Identifier: Apache-2.0

#include "opcalc/funcalc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "opcalc/random.hpp"

namespace opcalc {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kTwoPiI(0.0, 2.0 * kPi);

// One contour segment mapped to an integral over a real variable u with an
// exponentially decaying integrand:
//   rays        t = e^u            (full) or t = t_min + e^u (tail)
//   full lines  y = sinh(u)
//   finite runs y = mid + half tanh((pi/2) sinh u)
struct SegmentParam {
  enum class Kind { RayFull, RayTail, LineFull, LineFinite };
  Kind kind;
  Complex vertex;
  Complex dir;
  double t_min = 0.0;
  double x = 0.0;
  double y_mid = 0.0;
  double y_half = 0.0;
  double sign = 1.0;  // -1 when the segment is traversed against the canonical direction
  double u_lo = 0.0;
  double u_hi = 0.0;

  void eval(double u, Complex& lambda, Complex& dlambda) const {
    switch (kind) {
      case Kind::RayFull: {
        const double e = std::exp(u);
        lambda = vertex + e * dir;
        dlambda = e * dir;
        return;
      }
      case Kind::RayTail: {
        const double e = std::exp(u);
        lambda = vertex + (t_min + e) * dir;
        dlambda = e * dir;
        return;
      }
      case Kind::LineFull: {
        lambda = Complex(x, std::sinh(u));
        dlambda = Complex(0.0, std::cosh(u));
        return;
      }
      case Kind::LineFinite: {
        const double w = (kPi / 2.0) * std::sinh(u);
        lambda = Complex(x, y_mid + y_half * std::tanh(w));
        const double sech = 1.0 / std::cosh(w);
        dlambda = Complex(0.0, y_half * (kPi / 2.0) * std::cosh(u) * sech * sech);
        return;
      }
    }
  }
};

SegmentParam make_param(const ContourSegment& seg) {
  SegmentParam p{};
  if (std::holds_alternative<RaySegment>(seg)) {
    const auto& r = std::get<RaySegment>(seg);
    const double lo = std::min(r.t_begin, r.t_end);
    const double hi = std::max(r.t_begin, r.t_end);
    p.vertex = r.vertex;
    p.dir = std::polar(1.0, r.angle);
    p.sign = (r.t_end >= r.t_begin) ? 1.0 : -1.0;
    if (lo == 0.0 && std::isinf(hi)) {
      p.kind = SegmentParam::Kind::RayFull;
    } else if (lo > 0.0 && std::isinf(hi)) {
      p.kind = SegmentParam::Kind::RayTail;
      p.t_min = lo;
    } else {
      throw InvalidParameters("integrate_contour: unsupported ray segment range");
    }
  } else {
    const auto& v = std::get<VerticalSegment>(seg);
    p.x = v.x;
    p.sign = (v.y_end >= v.y_begin) ? 1.0 : -1.0;
    if (std::isinf(v.y_begin) && std::isinf(v.y_end)) {
      p.kind = SegmentParam::Kind::LineFull;
    } else if (!std::isinf(v.y_begin) && !std::isinf(v.y_end)) {
      p.kind = SegmentParam::Kind::LineFinite;
      const double lo = std::min(v.y_begin, v.y_end);
      const double hi = std::max(v.y_begin, v.y_end);
      p.y_mid = 0.5 * (lo + hi);
      p.y_half = 0.5 * (hi - lo);
      p.u_lo = -3.5;
      p.u_hi = 3.5;
    } else {
      throw InvalidParameters("integrate_contour: unsupported vertical segment range");
    }
  }
  return p;
}

// Expands the integration window until the integrand magnitude (including the
// substitution Jacobian) drops below `cut` at both ends.  `min_reach` makes
// sure the window covers the scale of the spectrum before decay is trusted.
void find_window(SegmentParam& p, const MatrixIntegrand& g, double cut, double min_reach,
                 double max_reach) {
  if (p.kind == SegmentParam::Kind::LineFinite) return;  // fixed window
  const auto magnitude = [&](double u) {
    Complex lambda, dlambda;
    p.eval(u, lambda, dlambda);
    return g(lambda).norm() * std::abs(dlambda);
  };
  double hi = std::max(2.0, std::log1p(min_reach));
  if (p.kind == SegmentParam::Kind::LineFull) hi = std::max(2.0, std::asinh(min_reach));
  while (hi < max_reach && magnitude(hi) > cut) hi += 2.0;
  double lo = -2.0;
  if (p.kind == SegmentParam::Kind::LineFull) {
    lo = -hi;
    while (lo > -max_reach && magnitude(lo) > cut) lo -= 2.0;
  } else {
    while (lo > -max_reach && magnitude(lo) > cut) lo -= 2.0;
  }
  p.u_lo = lo;
  p.u_hi = hi;
}

}  // namespace

QuadratureResult integrate_contour(const Contour& contour, const MatrixIntegrand& g, int dim,
                                   double tol, const QuadratureLimits& lim) {
  if (!(tol > 0.0)) throw InvalidParameters("integrate_contour: tol must be positive");
  std::vector<SegmentParam> params;
  params.reserve(contour.segments.size());
  for (const auto& seg : contour.segments) params.push_back(make_param(seg));

  // Spectral scale hint for the truncation search.
  double min_reach = 10.0;
  for (const auto& p : params) {
    min_reach = std::max(min_reach, 10.0 * (1.0 + std::abs(p.vertex) + p.t_min));
  }
  const double cut = tol * 1e-3 / static_cast<double>(params.size());
  for (auto& p : params) find_window(p, g, cut, min_reach, lim.max_reach);

  QuadratureResult res;
  res.value = ComplexMatrix::Zero(dim, dim);
  ComplexMatrix prev = ComplexMatrix::Zero(dim, dim);
  long total_nodes = 0;

  for (int level = 0;; ++level) {
    const long n = static_cast<long>(lim.initial_nodes - 1) * (1L << level) + 1;
    ComplexMatrix total = ComplexMatrix::Zero(dim, dim);
    for (const auto& p : params) {
      const double h = (p.u_hi - p.u_lo) / static_cast<double>(n - 1);
      ComplexMatrix acc = ComplexMatrix::Zero(dim, dim);
      for (long k = 0; k < n; ++k) {
        const double u = p.u_lo + h * static_cast<double>(k);
        Complex lambda, dlambda;
        p.eval(u, lambda, dlambda);
        const double w = (k == 0 || k == n - 1) ? 0.5 : 1.0;
        acc.noalias() += (w * dlambda) * g(lambda);
      }
      total.noalias() += (p.sign * h) * acc;
      total_nodes += n;
    }
    if (level >= 1) {
      const double diff = spectral_norm(total - prev);
      res.error_estimate = diff;
      if (diff <= tol) {
        res.value = total;
        res.nodes_used = total_nodes;
        res.converged = true;
        return res;
      }
    }
    prev = total;
    if (total_nodes >= lim.node_cap) {
      res.value = total;
      res.nodes_used = total_nodes;
      res.converged = false;
      return res;
    }
  }
}

namespace {

MatrixIntegrand resolvent_integrand(const HoloFunction& f, const ComplexMatrix& a) {
  const Eigen::Index n = a.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  return [f, a, id](Complex lambda) -> ComplexMatrix {
    ComplexMatrix shifted = -a;
    shifted.diagonal().array() += lambda;
    Eigen::PartialPivLU<ComplexMatrix> lu(shifted);
    return f.f(lambda) * lu.solve(id);
  };
}

void require_decay(const HoloFunction& f, const char* who) {
  if (!(f.decay_exponent > 0.0)) {
    throw NoDecay(std::string(who) + ": integrand has no decay at infinity; regularize first");
  }
}

QuadratureResult integrate_fc(const Contour& contour, const HoloFunction& f,
                              const ComplexMatrix& a, double tol) {
  QuadratureResult res =
      integrate_contour(contour, resolvent_integrand(f, a), static_cast<int>(a.rows()), tol);
  res.value /= kTwoPiI;
  res.error_estimate /= 2.0 * kPi;
  return res;
}

double contour_distance(const Contour& contour, Complex z, double radius) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& seg : contour.segments) {
    for (int k = 1; k < 256; ++k) {
      const ContourPoint p = sample_segment(seg, k / 256.0, radius);
      best = std::min(best, std::abs(p.z - z));
    }
  }
  return best;
}

}  // namespace

QuadratureResult fc_sector(const HoloFunction& f, const ComplexMatrix& a, double eta,
                           double tol) {
  if (!(eta > 0.0 && eta < kPi)) throw InvalidParameters("fc_sector: eta must lie in (0, pi)");
  if (f.domain && std::holds_alternative<Sector>(*f.domain) &&
      !(std::get<Sector>(*f.domain).sigma > eta)) {
    throw InvalidParameters("fc_sector: contour angle must stay below the domain angle");
  }
  require_decay(f, "fc_sector");
  const ComplexVector lam = eigenvalues(a);
  const double scale = 1.0 + a.norm();
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (std::abs(lam(i)) <= 1e-13 * scale) {
      throw SpectrumOnContour("fc_sector: 0 is (numerically) in the spectrum");
    }
    if (std::abs(std::arg(lam(i))) >= eta) {
      throw SpectrumOnContour("fc_sector: eigenvalue on or outside the contour sector");
    }
  }
  return integrate_fc(boundary_contour(Region(Sector{eta}), 1e6), f, a, tol);
}

QuadratureResult fc_strip(const HoloFunction& f, const ComplexMatrix& b, double sigma,
                          double tol) {
  if (!(sigma > 0.0)) throw InvalidParameters("fc_strip: sigma must be positive");
  require_decay(f, "fc_strip");
  const ComplexVector lam = eigenvalues(b);
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (std::abs(lam(i).real()) >= sigma - 10.0 * tol) {
      throw SpectrumOnContour("fc_strip: spectrum not inside the strip");
    }
  }
  return integrate_fc(boundary_contour(Region(Strip{sigma}), 1e6), f, b, tol);
}

QuadratureResult fc_halfplane(const HoloFunction& f, const ComplexMatrix& a, double eta,
                              double tol) {
  require_decay(f, "fc_halfplane");
  const ComplexVector lam = eigenvalues(a);
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam(i).real() <= -eta + 10.0 * tol) {
      throw SpectrumOnContour("fc_halfplane: spectrum too close to the line Re z = -eta");
    }
  }
  return integrate_fc(boundary_contour(Region(HalfPlane{-eta}), 1e6), f, a, tol);
}

QuadratureResult fc_kregion(const HoloFunction& f, const ComplexMatrix& a, double sigma_prime,
                            double a_vertex, double theta_prime, double tol) {
  require_decay(f, "fc_kregion");
  const KRegion k{sigma_prime, a_vertex, -theta_prime};
  const Region region(k);
  validate(region);
  const Contour contour = boundary_contour(region, 1e6);  // may throw DegenerateRegion
  const ComplexVector lam = eigenvalues(a);
  double max_abs = 0.0;
  for (Eigen::Index i = 0; i < lam.size(); ++i) max_abs = std::max(max_abs, std::abs(lam(i)));
  const double radius = 10.0 * (1.0 + max_abs + std::abs(a_vertex));
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (!contains(region, lam(i))) {
      throw SpectrumOnContour("fc_kregion: eigenvalue outside the region");
    }
    if (contour_distance(contour, lam(i), radius) < 10.0 * tol) {
      throw SpectrumOnContour("fc_kregion: eigenvalue too close to the contour");
    }
  }
  return integrate_fc(contour, f, a, tol);
}

namespace {

QuadratureResult fc_shifted_sector(const HoloFunction& f, const ComplexMatrix& a,
                                   double vertex, double sigma, double tol) {
  if (!(sigma > 0.0 && sigma < kPi)) {
    throw InvalidParameters("fc: shifted sector angle must lie in (0, pi)");
  }
  require_decay(f, "fc");
  const ComplexVector lam = eigenvalues(a);
  const double scale = 1.0 + a.norm() + std::abs(vertex);
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    const Complex rel = lam(i) - vertex;
    if (std::abs(rel) <= 1e-13 * scale || std::abs(std::arg(rel)) >= sigma) {
      throw SpectrumOnContour("fc: eigenvalue on or outside the shifted sector");
    }
  }
  return integrate_fc(boundary_contour(Region(ShiftedSector{vertex, sigma}), 1e6), f, a, tol);
}

}  // namespace

QuadratureResult fc(const HoloFunction& f, const ComplexMatrix& a, const Region& region,
                    double tol) {
  return std::visit(
      [&](const auto& r) -> QuadratureResult {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Sector>) {
          return fc_sector(f, a, r.sigma, tol);
        } else if constexpr (std::is_same_v<T, ShiftedSector>) {
          return fc_shifted_sector(f, a, r.a, r.sigma, tol);
        } else if constexpr (std::is_same_v<T, HalfPlane>) {
          return fc_halfplane(f, a, -r.alpha, tol);
        } else if constexpr (std::is_same_v<T, Strip>) {
          return fc_strip(f, a, r.beta, tol);
        } else {
          return fc_kregion(f, a, r.sigma, r.a, -r.r, tol);
        }
      },
      region);
}

ConvergenceLemmaReport convergence_lemma_check(const HoloFunction& f_bounded,
                                               const ComplexMatrix& a, double eta,
                                               double tol) {
  const ComplexVector lam = eigenvalues(a);
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (!(lam(i).real() > -eta)) {
      throw SpectrumOnContour("convergence_lemma_check: spectrum outside HP(-eta)");
    }
  }
  const ComplexMatrix oracle = apply_function_eigen(a, f_bounded.f);
  const double sup_f =
      sup_norm_estimate(f_bounded, Region(HalfPlane{-eta}), GridSpec{.radius = 1e2});

  ConvergenceLemmaReport rep;
  for (int n = 1; n <= 64; n *= 2) {
    const HoloFunction tau = regularizer(n, eta);
    const HoloFunction fn = product(product(tau, tau), f_bounded);
    const QuadratureResult r = fc_halfplane(fn, a, eta, 1e-9);
    if (!r.converged) throw NonConvergence("convergence_lemma_check: quadrature did not settle");
    rep.n_values.push_back(n);
    rep.deviations.push_back(spectral_norm(r.value - oracle));
    rep.norm_ratios.push_back(spectral_norm(r.value) / std::max(sup_f, 1e-300));
  }
  rep.monotone = true;
  for (std::size_t i = 1; i < rep.deviations.size(); ++i) {
    if (rep.deviations[i] > rep.deviations[i - 1] * (1.0 + 1e-6) + 1e-12) rep.monotone = false;
  }
  rep.final_below_tol = rep.deviations.back() <= tol;
  rep.uniform_bound = *std::max_element(rep.norm_ratios.begin(), rep.norm_ratios.end());
  return rep;
}

double multiplicativity_check(const HoloFunction& f, const HoloFunction& g,
                              const ComplexMatrix& a, const Region& region, double tol) {
  const QuadratureResult rf = fc(f, a, region, tol);
  const QuadratureResult rg = fc(g, a, region, tol);
  const QuadratureResult rfg = fc(product(f, g), a, region, tol);
  if (!rf.converged || !rg.converged || !rfg.converged) {
    throw NonConvergence("multiplicativity_check: quadrature did not settle");
  }
  const double denom = spectral_norm(rf.value) * spectral_norm(rg.value) + 1e-300;
  return spectral_norm(rfg.value - rf.value * rg.value) / denom;
}

ShiftIdentityReport resolvent_shift_identity_check(const HoloFunction& f,
                                                   const ComplexMatrix& a, double eta_shift,
                                                   const KRegion& k, double tol) {
  if (eta_shift < 0.0) {
    throw InvalidParameters("resolvent_shift_identity_check: shift must be >= 0");
  }
  const Eigen::Index n = a.rows();
  const ComplexMatrix a_shifted = a + eta_shift * ComplexMatrix::Identity(n, n);
  const double qtol = std::max(tol * 1e-2, 1e-12);

  const QuadratureResult lhs = fc_kregion(f, a, k.sigma, k.a, -k.r, qtol);
  const QuadratureResult first = fc_kregion(f, a_shifted, k.sigma, k.a, -k.r, qtol);

  const Contour contour = boundary_contour(Region(k), 1e6);
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const MatrixIntegrand both = [&](Complex lambda) -> ComplexMatrix {
    ComplexMatrix s1 = -a_shifted;
    s1.diagonal().array() += lambda;
    ComplexMatrix s2 = -a;
    s2.diagonal().array() += lambda;
    const ComplexMatrix r2 = Eigen::PartialPivLU<ComplexMatrix>(s2).solve(id);
    return f.f(lambda) * Eigen::PartialPivLU<ComplexMatrix>(s1).solve(r2);
  };
  QuadratureResult cross = integrate_contour(contour, both, static_cast<int>(n), qtol);
  cross.value /= kTwoPiI;
  if (!lhs.converged || !first.converged || !cross.converged) {
    throw NonConvergence("resolvent_shift_identity_check: quadrature did not settle");
  }

  // R(l,A) - R(l,A+eta) = -eta R(l,A+eta) R(l,A), integrated against f/(2 pi i).
  const ComplexMatrix rhs = first.value - eta_shift * cross.value;
  ShiftIdentityReport rep;
  rep.defect = spectral_norm(lhs.value - rhs);
  rep.lhs_norm = spectral_norm(lhs.value);
  rep.nodes_used = lhs.nodes_used + first.nodes_used + cross.nodes_used;
  return rep;
}

namespace {

// A pole placement strictly outside the region, at a seeded random position.
Complex pole_outside(const Region& region, SplitMix64& rng) {
  return std::visit(
      [&](const auto& r) -> Complex {
        using T = std::decay_t<decltype(r)>;
        const double rho = std::exp(rng.uniform(std::log(0.3), std::log(30.0)));
        if constexpr (std::is_same_v<T, Sector>) {
          const double span = kPi - r.sigma;
          const double ang = r.sigma + 0.1 * span + rng.uniform() * 0.85 * span;
          return std::polar(rho, rng.uniform() < 0.5 ? ang : -ang);
        } else if constexpr (std::is_same_v<T, ShiftedSector>) {
          const double span = kPi - r.sigma;
          const double ang = r.sigma + 0.1 * span + rng.uniform() * 0.85 * span;
          return r.a + std::polar(rho, rng.uniform() < 0.5 ? ang : -ang);
        } else if constexpr (std::is_same_v<T, HalfPlane>) {
          return Complex(r.alpha - 0.3 - rho, rng.uniform(-10.0, 10.0));
        } else if constexpr (std::is_same_v<T, Strip>) {
          const double side = rng.uniform() < 0.5 ? 1.0 : -1.0;
          return Complex(side * (r.beta + 0.3 + rho), rng.uniform(-10.0, 10.0));
        } else {
          // Real and left of both the vertical line and the vertex.
          return Complex(std::min(r.a, r.r) - 0.3 - rho, 0.0);
        }
      },
      region);
}

std::vector<HoloFunction> probe_catalog(const Region& region, int count, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<HoloFunction> catalog;
  catalog.reserve(count);
  for (int i = 0; i < count; ++i) {
    const Complex mu = pole_outside(region, rng);
    switch (i % 4) {
      case 0:
        catalog.push_back(resolvent_function(mu));
        break;
      case 1:
        catalog.push_back(product(resolvent_function(mu), resolvent_function(mu)));
        break;
      case 2: {
        const Complex mu2 = pole_outside(region, rng);
        catalog.push_back(product(resolvent_function(mu), resolvent_function(mu2)));
        break;
      }
      default: {
        const HoloFunction cube =
            product(resolvent_function(mu), product(resolvent_function(mu), resolvent_function(mu)));
        catalog.push_back(scale(Complex(rng.uniform(0.5, 4.0), 0.0), cube));
        break;
      }
    }
  }
  return catalog;
}

// Places the integration contour strictly between the spectrum and the
// region boundary.
Region choose_contour_region(const Region& region, const ComplexVector& lam) {
  return std::visit(
      [&](const auto& r) -> Region {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Sector>) {
          double omega = 0.0;
          for (Eigen::Index i = 0; i < lam.size(); ++i) {
            omega = std::max(omega, std::abs(std::arg(lam(i))));
          }
          if (!(omega < r.sigma)) {
            throw SpectrumOutsideSector("calculus probe: spectrum outside the sector");
          }
          return Region(Sector{0.5 * (omega + r.sigma)});
        } else if constexpr (std::is_same_v<T, ShiftedSector>) {
          double omega = 0.0;
          for (Eigen::Index i = 0; i < lam.size(); ++i) {
            omega = std::max(omega, std::abs(std::arg(lam(i) - r.a)));
          }
          if (!(omega < r.sigma)) {
            throw SpectrumOutsideSector("calculus probe: spectrum outside the shifted sector");
          }
          return Region(ShiftedSector{r.a, 0.5 * (omega + r.sigma)});
        } else if constexpr (std::is_same_v<T, HalfPlane>) {
          double min_re = std::numeric_limits<double>::infinity();
          for (Eigen::Index i = 0; i < lam.size(); ++i) {
            min_re = std::min(min_re, lam(i).real());
          }
          if (!(min_re > r.alpha)) {
            throw SpectrumOnContour("calculus probe: spectrum outside the half-plane");
          }
          return Region(HalfPlane{0.5 * (r.alpha + min_re)});
        } else if constexpr (std::is_same_v<T, Strip>) {
          double w = 0.0;
          for (Eigen::Index i = 0; i < lam.size(); ++i) {
            w = std::max(w, std::abs(lam(i).real()));
          }
          if (!(w < r.beta)) {
            throw SpectrumOnContour("calculus probe: spectrum outside the strip");
          }
          return Region(Strip{0.5 * (w + r.beta)});
        } else {
          for (Eigen::Index i = 0; i < lam.size(); ++i) {
            if (!contains(region, lam(i))) {
              throw SpectrumOnContour("calculus probe: spectrum outside the region");
            }
          }
          double sigma2 = 0.5 * (kPi / 2.0 + r.sigma);
          for (int attempt = 0; attempt < 3; ++attempt) {
            // Eigenvalues not covered by the shrunken sector must clear the
            // shrunken half-plane line by a margin.
            double min_gap = std::numeric_limits<double>::infinity();
            double worst_angle = 0.0;
            for (Eigen::Index i = 0; i < lam.size(); ++i) {
              if (std::abs(std::arg(lam(i) - r.a)) >= sigma2) {
                min_gap = std::min(min_gap, lam(i).real() - r.r);
                worst_angle = std::max(worst_angle, std::abs(std::arg(lam(i) - r.a)));
              }
            }
            if (!std::isfinite(min_gap)) return Region(KRegion{sigma2, r.a, r.r + 0.5});
            if (min_gap > 0.0) return Region(KRegion{sigma2, r.a, r.r + 0.5 * min_gap});
            sigma2 = 0.5 * (worst_angle + r.sigma);
          }
          throw SpectrumOnContour("calculus probe: could not separate spectrum from boundary");
        }
      },
      region);
}

}  // namespace

double calculus_bound_probe(const ComplexMatrix& a, const Region& region,
                            const ProbeSpec& spec, double tol) {
  if (spec.count < 1) throw InvalidParameters("calculus_bound_probe: count must be positive");
  const ComplexVector lam = eigenvalues(a);
  const Region contour_region = choose_contour_region(region, lam);
  // Eigenvalues join the sup grid so a normal operator can never beat the
  // sampled sup norm by more than the quadrature error.
  GridSpec grid = spec.grid;
  for (Eigen::Index i = 0; i < lam.size(); ++i) grid.extra_points.push_back(lam(i));

  double best = 0.0;
  for (const HoloFunction& f : probe_catalog(region, spec.count, spec.seed)) {
    const QuadratureResult r = fc(f, a, contour_region, tol);
    if (!r.converged) throw NonConvergence("calculus_bound_probe: quadrature did not settle");
    const double sup = sup_norm_estimate(f, region, grid);
    best = std::max(best, spectral_norm(r.value) / std::max(sup, 1e-300));
  }
  return best;
}

}  // namespace opcalc
