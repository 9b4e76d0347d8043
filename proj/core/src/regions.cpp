// SPDX-License-Identifier: Apache-2.0

#include "opcalc/regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace opcalc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool cond, const char* msg) {
  if (!cond) throw InvalidParameters(msg);
}

}  // namespace

void validate(const Region& region) {
  std::visit(
      [](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Sector>) {
          require(r.sigma > 0.0 && r.sigma < kPi, "sector: need 0 < sigma < pi");
        } else if constexpr (std::is_same_v<T, ShiftedSector>) {
          require(r.sigma > 0.0 && r.sigma < kPi, "shifted_sector: need 0 < sigma < pi");
          require(std::isfinite(r.a), "shifted_sector: vertex must be finite");
        } else if constexpr (std::is_same_v<T, HalfPlane>) {
          require(std::isfinite(r.alpha), "half_plane: alpha must be finite");
        } else if constexpr (std::is_same_v<T, Strip>) {
          require(r.beta > 0.0 && std::isfinite(r.beta), "strip: need beta > 0");
        } else {
          require(r.sigma > kPi / 2.0 && r.sigma < kPi, "k_region: need pi/2 < sigma < pi");
          require(std::isfinite(r.a) && std::isfinite(r.r), "k_region: a, r must be finite");
        }
      },
      region);
}

bool contains(const Region& region, Complex z) {
  return std::visit(
      [z](const auto& r) -> bool {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Sector>) {
          if (z == Complex(0.0, 0.0)) return false;
          return std::abs(std::arg(z)) < r.sigma;
        } else if constexpr (std::is_same_v<T, ShiftedSector>) {
          return contains(Region(Sector{r.sigma}), z - r.a);
        } else if constexpr (std::is_same_v<T, HalfPlane>) {
          return z.real() > r.alpha;
        } else if constexpr (std::is_same_v<T, Strip>) {
          return std::abs(z.real()) < r.beta;
        } else {
          return contains(Region(ShiftedSector{r.a, r.sigma}), z) ||
                 contains(Region(HalfPlane{r.r}), z);
        }
      },
      region);
}

// All boundaries are oriented with the region on the left:
//   sector       incoming along the upper ray, outgoing along the lower ray
//   half-plane   single vertical line traversed downward
//   strip        right line upward, left line downward
//   K-region     upper ray tail in, finite vertical piece downward, lower
//                ray tail out (the two ray/line crossings at t* = (r-a)/cos sigma)
// Closing any of these at a large radius winds once counterclockwise around
// every interior point, which is what makes (1/2i pi) ∫ f(λ)/(λ-z) dλ = f(z).
Contour boundary_contour(const Region& region, double truncation_radius) {
  require(truncation_radius > 0.0, "boundary_contour: truncation_radius must be positive");
  if (const auto* k = std::get_if<KRegion>(&region); k && k->sigma <= kPi / 2.0) {
    throw DegenerateRegion("k_region boundary: rays never meet the vertical line");
  }
  validate(region);
  Contour out;
  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Sector>) {
          out.segments.push_back(RaySegment{Complex(0, 0), r.sigma, kInf, 0.0});
          out.segments.push_back(RaySegment{Complex(0, 0), -r.sigma, 0.0, kInf});
        } else if constexpr (std::is_same_v<T, ShiftedSector>) {
          out.segments.push_back(RaySegment{Complex(r.a, 0), r.sigma, kInf, 0.0});
          out.segments.push_back(RaySegment{Complex(r.a, 0), -r.sigma, 0.0, kInf});
        } else if constexpr (std::is_same_v<T, HalfPlane>) {
          out.segments.push_back(VerticalSegment{r.alpha, kInf, -kInf});
        } else if constexpr (std::is_same_v<T, Strip>) {
          out.segments.push_back(VerticalSegment{r.beta, -kInf, kInf});
          out.segments.push_back(VerticalSegment{-r.beta, kInf, -kInf});
        } else {
          if (r.sigma <= kPi / 2.0) {
            throw DegenerateRegion("k_region boundary: rays never meet the vertical line");
          }
          if (r.r >= r.a) {
            // Half-plane contained in the shifted sector.
            out.half_plane_absorbed = true;
            out.segments.push_back(RaySegment{Complex(r.a, 0), r.sigma, kInf, 0.0});
            out.segments.push_back(RaySegment{Complex(r.a, 0), -r.sigma, 0.0, kInf});
            return;
          }
          const double t_star = (r.r - r.a) / std::cos(r.sigma);
          const double y_star = t_star * std::sin(r.sigma);
          require(std::abs(r.a) + t_star < truncation_radius,
                  "boundary_contour: intersections outside truncation radius");
          out.segments.push_back(RaySegment{Complex(r.a, 0), r.sigma, kInf, t_star});
          out.segments.push_back(VerticalSegment{r.r, y_star, -y_star});
          out.segments.push_back(RaySegment{Complex(r.a, 0), -r.sigma, t_star, kInf});
        }
      },
      region);
  return out;
}

ContourPoint sample_segment(const ContourSegment& seg, double u, double radius) {
  require(u > 0.0 && u < 1.0, "sample_segment: u must lie in (0,1)");
  return std::visit(
      [&](const auto& s) -> ContourPoint {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, RaySegment>) {
          double t0 = s.t_begin, t1 = s.t_end;
          if (std::isinf(t0)) t0 = radius;
          if (std::isinf(t1)) t1 = radius;
          const double t = t0 + u * (t1 - t0);
          const Complex dir = std::polar(1.0, s.angle);
          return {s.vertex + t * dir, (t1 >= t0 ? dir : -dir)};
        } else {
          double y0 = s.y_begin, y1 = s.y_end;
          if (std::isinf(y0)) y0 = std::copysign(radius, y0);
          if (std::isinf(y1)) y1 = std::copysign(radius, y1);
          const double y = y0 + u * (y1 - y0);
          return {Complex(s.x, y), Complex(0.0, y1 >= y0 ? 1.0 : -1.0)};
        }
      },
      seg);
}

FolkloreConstants folklore_constants(double eta, double epsilon, double a, double sigma,
                                     double sigma_prime) {
  if (!(sigma_prime > kPi / 2.0 && sigma_prime < sigma && sigma < kPi)) {
    throw InvalidAngles("folklore_constants: need pi/2 < sigma' < sigma < pi");
  }
  require(eta > 0.0, "folklore_constants: eta must be positive");
  require(epsilon > 0.0, "folklore_constants: epsilon must be positive");
  FolkloreConstants out;
  out.zone_radius = std::max(2.0 * a, (eta + a) / std::abs(std::cos(sigma_prime)));
  out.m_sup = std::abs(a) + out.zone_radius;
  out.delta = std::sin(sigma - sigma_prime) / 2.0;
  out.c_bound = std::max(4.0 * out.m_sup / epsilon, 6.0 / out.delta);
  return out;
}

namespace {

// Radial-angular grid for sector-like regions, rectangular for strips and
// half-planes; a K-region unions the two.  Points are interior by
// construction, extra points are membership-filtered.  The angle and height
// grids include the real axis, where the rational test families peak.
void grid_points_impl(const Region& region, const GridSpec& grid,
                      const std::function<void(Complex)>& visit) {
  const int n = grid.points_per_direction;
  const int n_odd = (n % 2 == 1) ? n : n + 1;  // symmetric grid through 0
  const auto radial = [&](const std::function<void(double)>& f) {
    for (double r = grid.inner_radius; r <= grid.radius; r *= grid.radial_ratio) f(r);
  };
  const auto heights = [&](const std::function<void(double)>& f) {
    for (int j = 0; j < n_odd; ++j) {
      f(-grid.radius + j * (2.0 * grid.radius / (n_odd - 1)));
    }
  };
  std::visit(
      [&](const auto& reg) {
        using T = std::decay_t<decltype(reg)>;
        if constexpr (std::is_same_v<T, Sector> || std::is_same_v<T, ShiftedSector>) {
          double sigma, a;
          if constexpr (std::is_same_v<T, Sector>) {
            sigma = reg.sigma;
            a = 0.0;
          } else {
            sigma = reg.sigma;
            a = reg.a;
          }
          radial([&](double r) {
            for (int j = 0; j < n_odd; ++j) {
              const double theta = (j - (n_odd - 1) / 2) * (2.0 * sigma / (n_odd + 1));
              visit(Complex(a, 0.0) + std::polar(r, theta));
            }
          });
        } else if constexpr (std::is_same_v<T, HalfPlane>) {
          radial([&](double dx) {
            heights([&](double y) { visit(Complex(reg.alpha + dx, y)); });
          });
        } else if constexpr (std::is_same_v<T, Strip>) {
          for (int i = 0; i < n; ++i) {
            const double x = -reg.beta + (i + 0.5) * (2.0 * reg.beta / n);
            heights([&](double y) { visit(Complex(x, y)); });
          }
        } else {
          grid_points_impl(Region(ShiftedSector{reg.a, reg.sigma}), grid, visit);
          grid_points_impl(Region(HalfPlane{reg.r}), grid, visit);
        }
      },
      region);
}

}  // namespace

void for_each_grid_point(const Region& region, const GridSpec& grid,
                         const std::function<void(Complex)>& visit) {
  validate(region);
  grid_points_impl(region, grid, visit);
  for (Complex z : grid.extra_points) {
    if (contains(region, z)) visit(z);
  }
}

double sup_norm_estimate(const ScalarFunction& f, const Region& region, const GridSpec& grid) {
  double best = 0.0;
  for_each_grid_point(region, grid, [&](Complex z) {
    Complex v;
    try {
      v = f(z);
    } catch (const std::exception& e) {
      throw EvaluationFailure(std::string("sup_norm_estimate: integrand threw: ") + e.what());
    }
    best = std::max(best, std::abs(v));
  });
  return best;
}

Hinf1Estimate hinf1_seminorm_estimate(const ScalarFunction& f, const ScalarFunction& df,
                                      const Region& region, const GridSpec& grid) {
  Hinf1Estimate out{0.0, Complex(0, 0), true};
  const double outer_shell = grid.radius / grid.radial_ratio / grid.radial_ratio;
  double attained_abs = 0.0;
  for_each_grid_point(region, grid, [&](Complex z) {
    Complex d;
    try {
      if (df) {
        d = df(z);
      } else {
        const double h = 1e-6 * (1.0 + std::abs(z));
        d = (f(z + h) - f(z - h)) / (2.0 * h);
      }
    } catch (const std::exception& e) {
      throw EvaluationFailure(std::string("hinf1_seminorm_estimate: derivative threw: ") +
                              e.what());
    }
    const double v = std::abs(z * d);
    if (v > out.value) {
      out.value = v;
      out.attained_at = z;
      attained_abs = std::abs(z);
    }
  });
  // Maximum attained on the outermost shells: the sampled seminorm is still
  // growing at the grid edge, so the true seminorm is likely unbounded.
  if (attained_abs >= outer_shell) out.bounded = false;
  return out;
}

}  // namespace opcalc
