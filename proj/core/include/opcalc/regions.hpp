// SPDX-License-Identifier: Apache-2.0
//
// Complex domains used by the contour calculi (sectors, vertical strips,
// half-planes and sector/half-plane unions) together with their oriented
// boundary paths and grid-based sup-norm estimates.

#ifndef OPCALC_REGIONS_HPP
#define OPCALC_REGIONS_HPP

#include <variant>
#include <vector>

#include "opcalc/errors.hpp"
#include "opcalc/types.hpp"

namespace opcalc {

// {z != 0 : |arg z| < sigma}, 0 < sigma < pi.
struct Sector {
  double sigma;
};

// a + Sector(sigma).
struct ShiftedSector {
  double a;
  double sigma;
};

// {Re z > alpha}.
struct HalfPlane {
  double alpha;
};

// {|Re z| < beta}, beta > 0.  The strip is vertical.
struct Strip {
  double beta;
};

// (a + Sector(sigma)) ∪ HalfPlane(r), pi/2 < sigma < pi.
struct KRegion {
  double sigma;
  double a;
  double r;
};

using Region = std::variant<Sector, ShiftedSector, HalfPlane, Strip, KRegion>;

// Throws InvalidParameters when the defining constraints are violated.
void validate(const Region& region);

// Open-region membership.  KRegion membership is the union test of the
// shifted sector and the half-plane.
bool contains(const Region& region, Complex z);

// Points vertex + t e^{i angle}, traversed from t_begin to t_end.
// Infinite endpoints are allowed.
struct RaySegment {
  Complex vertex;
  double angle;
  double t_begin;
  double t_end;
};

// Points x + i y, traversed from y_begin to y_end.  Infinite endpoints are
// allowed.
struct VerticalSegment {
  double x;
  double y_begin;
  double y_end;
};

using ContourSegment = std::variant<RaySegment, VerticalSegment>;

// Oriented boundary path.  Orientation is such that the region lies to the
// LEFT of the traversal, i.e. the truncated closure of the path winds once
// counterclockwise around every interior point.  Consecutive finite segment
// endpoints agree to 1e-12.
struct Contour {
  std::vector<ContourSegment> segments;
  // KRegion with r >= a degenerates to the shifted sector boundary (the
  // half-plane is contained in the sector); flagged instead of erroring.
  bool half_plane_absorbed = false;
};

// Throws DegenerateRegion for a KRegion whose rays never meet the vertical
// line (sigma <= pi/2), InvalidParameters when segment intersections fall
// outside truncation_radius.
Contour boundary_contour(const Region& region, double truncation_radius);

// Point and unit tangent at relative parameter u in (0,1) along a segment,
// with infinite ends cut at |t| (resp. |y|) = radius.
struct ContourPoint {
  Complex z;
  Complex tangent;
};
ContourPoint sample_segment(const ContourSegment& seg, double u, double radius);

// Constants from the Cauchy-estimate comparison of the H-infinity-1 seminorm
// on a half-plane with the sup norm on an enclosing sector/half-plane union:
//   zone_radius = max{2a, (eta+a)/|cos sigma'|}
//   m_sup       = |a| + zone_radius
//   delta       = sin(sigma - sigma')/2      (midpoint of the admissible range)
//   c_bound     = max{4 m_sup/epsilon, 6/delta}
struct FolkloreConstants {
  double zone_radius;
  double m_sup;
  double delta;
  double c_bound;
};

// Requires pi/2 < sigma' < sigma < pi; throws InvalidAngles otherwise.
FolkloreConstants folklore_constants(double eta, double epsilon, double a, double sigma,
                                     double sigma_prime);

// Deterministic evaluation grids: geometric radial spacing (ratio
// radial_ratio from inner_radius up to radius), uniform in angle and height.
// The resulting estimates are lower bounds of the true sup, not certified
// suprema.
struct GridSpec {
  double radius = 1e3;
  int points_per_direction = 512;
  double inner_radius = 1e-4;
  double radial_ratio = 1.1;
  std::vector<Complex> extra_points;  // appended when inside the region
};

// max |f| over the grid.  Throws EvaluationFailure if f throws on an
// in-region grid point.
double sup_norm_estimate(const ScalarFunction& f, const Region& region,
                         const GridSpec& grid = {});

struct Hinf1Estimate {
  double value;
  Complex attained_at;
  // false when the maximum sits on the outermost radial shell, i.e. the
  // estimate kept growing to the grid edge and |z f'(z)| looks unbounded.
  bool bounded;
};

// max |z f'(z)| over the grid.  df may be empty; a central difference with
// step 1e-6 (1+|z|) is used as fallback.
Hinf1Estimate hinf1_seminorm_estimate(const ScalarFunction& f, const ScalarFunction& df,
                                      const Region& region, const GridSpec& grid = {});

// Enumerates the deterministic grid for a region (used by the estimates
// above and by test code).
void for_each_grid_point(const Region& region, const GridSpec& grid,
                         const std::function<void(Complex)>& visit);

}  // namespace opcalc

#endif  // OPCALC_REGIONS_HPP
