// SPDX-License-Identifier: Apache-2.0
//
// Shift dilation of a lower-bounded operator realized on truncated
// l_p(N; C^d): the operator G = I - (alpha/c) T^ R, quotient norms on
// l_p / ran(G) by convex minimization, the embedding iota, and the induced
// commutant homomorphism, all as numeric checks.

#ifndef OPCALC_DILATION_HPP
#define OPCALC_DILATION_HPP

#include <cstdint>
#include <optional>
#include <utility>

#include "opcalc/operators.hpp"

namespace opcalc {

// Data (T, c, alpha, p): T acts blockwise on l_p(N; C^d) through T^,
// |T x| >= c |x| in the Euclidean norm, alpha > 1 and p in (1, inf) with
// alpha >= 2^{1-1/p}.  Block norms are Euclidean; the l_p structure lives
// across blocks only.
struct DilationModel {
  ComplexMatrix t_op;
  double c = 1.0;
  double alpha = 2.0;
  double p = 2.0;

  int dim() const { return static_cast<int>(t_op.rows()); }
  double shift_gain() const { return alpha / c; }
  bool admissible() const;
  // Throws InvalidParameters (alpha/p constraints) or LowerBoundViolated
  // (sigma_min(T) < c).
  void validate() const;
};

// Finitely supported element of l_p(N; C^d); coordinates 1..support().
struct BlockVector {
  std::vector<ComplexVector> blocks;
  double p = 2.0;

  int support() const { return static_cast<int>(blocks.size()); }
  double norm() const;  // (sum |x_n|_2^p)^{1/p}
};

// j(x) = (x, 0, 0, ...).
BlockVector embed(const ComplexVector& x, double p);
// R(x_1, x_2, ...) = (0, x_1, x_2, ...).
BlockVector right_shift(const BlockVector& z);

struct QuotientOptions;

// Co-class [v] = v + ran(G) held by one representative.  The quotient map is
// contractive: norm() never exceeds the representative norm.
struct QuotientElement {
  BlockVector representative;
  const DilationModel* model = nullptr;

  double norm(const QuotientOptions& opt) const;
  double norm() const;
};

// G z = z - (alpha/c) T^ R z; extends the support by exactly one block.
BlockVector apply_G(const DilationModel& model, const BlockVector& z);

struct QuotientOptions {
  int support_max = 256;
  double tol = 1e-6;
  double irls_tol = 1e-10;   // relative objective decrease
  int irls_max_iter = 500;
  double smoothing = 1e-12;  // mu in (|r|^2 + mu)^{p/2}
};

// min over z supported on N blocks of |v - G z|_p.  For p = 2 this is one
// least-squares solve (block-tridiagonal normal equations); for p != 2 the
// smoothed objective sum (|r_k|^2 + mu)^{p/2} is minimized by iteratively
// reweighted least squares, which is globally optimal up to smoothing since
// the objective is convex.
double distance_at_support(const DilationModel& model, const BlockVector& v, int support,
                           const QuotientOptions& opt = {});

// Quotient norm |[v]| = dist(v, ran G), computed over GROWING support.
//
// The support-growth formulation is essential: fixing a truncation length N
// and quotienting by ran(G_N) is wrong, because the truncated G is I minus a
// nilpotent, hence invertible, and the quotient collapses to zero.  Growing
// the support instead is exact in the limit: finitely supported z are dense
// and G spreads support by exactly one block, so the distances
// distance_at_support(v, N) decrease monotonically to the true quotient
// norm.  The first support length where consecutive minima differ by less
// than tol wins; NonConvergence if support_max is reached first.
double quotient_norm(const DilationModel& model, const BlockVector& v,
                     const QuotientOptions& opt = {});

// |iota x| = quotient_norm(j(x)); satisfies |x|/alpha <= |iota x| <= |x|.
double iota_norm(const DilationModel& model, const ComplexVector& x,
                 const QuotientOptions& opt = {});

// |Phi(U) iota x| for U in the commutant of T, valid because
// Phi(U) iota x = iota(U x).  Throws NotInCommutant when
// |UT - TU| > 1e-10 |U| |T|.
double phi_image_norm(const DilationModel& model, const ComplexMatrix& u,
                      const ComplexVector& x, const QuotientOptions& opt = {});

struct GLowerBoundReport {
  double min_ratio;  // observed min |G z| / |z|
  double bound;      // alpha - 1
  bool pass;         // min_ratio >= (alpha-1)(1 - 1e-10)
  long samples;
};

GLowerBoundReport g_lower_bound_check(const DilationModel& model, long samples,
                                      std::uint64_t seed, int max_support = 32);

struct InverseActionReport {
  double range_residual;         // quotient_norm(G v): range classes vanish
  double inverse_prep_residual;  // quotient_norm(v - (alpha/c) T^ R v), same vector
  double q_shifted;              // quotient_norm(R v)
  double q_v;                    // quotient_norm(v)
  bool pass;
};

// Representative-level identities behind the inverse of the dilated
// operator: G v vanishes in the quotient, [v] = [(alpha/c) T^ R v], and the
// inverse action L[v] = (alpha/c)[R v] is bounded by (alpha/c)|[v]|.
InverseActionReport inverse_action_check(const DilationModel& model, const BlockVector& v,
                                         double tol, const QuotientOptions& opt = {});

struct AdmissibilityReport {
  bool formula_ok;  // alpha >= 2^{1-1/p}
  bool sampled_ok;  // (|a|+|b|)^p <= |alpha a|^p + |alpha b|^p on samples
  bool agree;
  std::optional<std::pair<Complex, Complex>> counterexample;
};

// Cross-validates the closed-form admissibility threshold against random
// pairs; the deterministic pair a = b = 1 (the extremal direction) is always
// included, so an inadmissible (alpha, p) is guaranteed a counterexample.
AdmissibilityReport alpha_p_admissibility(double alpha, double p, int samples = 1000,
                                          std::uint64_t seed = 7);

struct TwoSpaceEmbedding {
  ComplexMatrix op;  // flat matrix of the truncated junction shift
  int window;
  int dim_left;   // block dim on indices <= 0 (codomain of t1)
  int dim_right;  // block dim on indices  > 0 (domain of t1)
  double min_interior_ratio;
  long interior_samples;
  long edge_excluded;
  bool pass;
};

// Two-space variant: for t1 with sigma_min(t1) >= c > 0, builds the
// truncated two-sided shift on indices [-window, window] with junction
// (T z)_0 = (1/c) t1 z_1 and (T z)_n = z_{n+1} elsewhere.  The codomain
// blocks sit on indices <= 0 and the domain blocks on indices > 0, so the
// junction is well-typed for rectangular t1.  Blocks entering from outside
// the window are zero; samples whose leftmost block would be shifted out are
// counted as edge_excluded rather than checked.
TwoSpaceEmbedding two_space_embed(const ComplexMatrix& t1, double c, int window, double p,
                                  long samples, std::uint64_t seed);

}  // namespace opcalc

#endif  // OPCALC_DILATION_HPP
