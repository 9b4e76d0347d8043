// SPDX-License-Identifier: Apache-2.0

#ifndef OPCALC_HOLO_HPP
#define OPCALC_HOLO_HPP

#include <optional>
#include <vector>

#include "opcalc/regions.hpp"

namespace opcalc {

// Holomorphic function handle defining admissible calculus integrands.
//
// decay_exponent is the decay rate at infinity: |f(z)| = O(|z|^-decay) on the
// domain.  0 means "bounded only"; such functions need a regularizer before
// they can be integrated over an unbounded contour.  Near the origin the
// contour calculi only need f bounded, since their preconditions keep 0 off
// the spectrum; classic integrands like z/(1+z)^2 additionally vanish at 0,
// which check_dunford_class can verify by sampling.
struct HoloFunction {
  ScalarFunction f;
  ScalarFunction df;  // may be empty; central difference fallback
  double decay_exponent = 0.0;
  std::optional<Region> domain;

  Complex operator()(Complex z) const { return f(z); }

  // Analytic derivative when provided, otherwise a central difference with
  // step h = 1e-6 (1 + |z|).  The integrand families are smooth rationals,
  // so real-step differencing is adequate.
  Complex derivative(Complex z) const;
};

HoloFunction constant_function(Complex value);

// num/den with coefficients in ascending powers.  decay_exponent is
// max(0, deg den - deg num); the derivative is analytic.
HoloFunction rational_function(std::vector<Complex> num, std::vector<Complex> den);

// z -> 1/(mu - z); decay exponent 1.
HoloFunction resolvent_function(Complex mu);

// tau_n(z) = [n/(n+w)] [n w/(1+n w)], w = z + 1 + eta'.  On HP(-eta'):
// |tau_n| <= 1 uniformly in n, tau_n -> 1 pointwise, and tau_n^2 g decays
// like (1+|z|)^-2 for bounded g.
HoloFunction regularizer(int n, double eta_prime);

// rho(n z) - rho(z/n) with rho(z) = z/(1+eta'+z)^2.  Tends to 0 pointwise
// (both terms vanish as n grows); kept for comparison experiments next to
// the regularizer above, which tends to 1.
HoloFunction difference_regularizer(int n, double eta_prime);

HoloFunction product(const HoloFunction& f, const HoloFunction& g);
HoloFunction scale(Complex factor, const HoloFunction& f);

// Sampled two-sided Dunford-class bound |f(z)| <= bound |z|^eps/(1+|z|^{2 eps})
// over the region grid.
bool check_dunford_class(const HoloFunction& f, const Region& region, double eps,
                         double bound, const GridSpec& grid = {});

double sup_norm_estimate(const HoloFunction& f, const Region& region,
                         const GridSpec& grid = {});
Hinf1Estimate hinf1_seminorm_estimate(const HoloFunction& f, const Region& region,
                                      const GridSpec& grid = {});

}  // namespace opcalc

#endif  // OPCALC_HOLO_HPP
