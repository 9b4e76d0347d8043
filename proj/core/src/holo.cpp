// SPDX-License-Identifier: Apache-2.0

#include "opcalc/holo.hpp"

#include <algorithm>
#include <cmath>

namespace opcalc {

namespace {

Complex horner(const std::vector<Complex>& coeffs, Complex z) {
  Complex acc(0.0, 0.0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::vector<Complex> poly_derivative(const std::vector<Complex>& coeffs) {
  std::vector<Complex> out;
  for (std::size_t k = 1; k < coeffs.size(); ++k) out.push_back(double(k) * coeffs[k]);
  if (out.empty()) out.push_back(Complex(0, 0));
  return out;
}

int poly_degree(const std::vector<Complex>& coeffs) {
  for (int k = static_cast<int>(coeffs.size()) - 1; k >= 0; --k) {
    if (coeffs[static_cast<std::size_t>(k)] != Complex(0, 0)) return k;
  }
  return -1;
}

}  // namespace

Complex HoloFunction::derivative(Complex z) const {
  if (df) return df(z);
  const double h = 1e-6 * (1.0 + std::abs(z));
  return (f(z + h) - f(z - h)) / (2.0 * h);
}

HoloFunction constant_function(Complex value) {
  HoloFunction out;
  out.f = [value](Complex) { return value; };
  out.df = [](Complex) { return Complex(0, 0); };
  out.decay_exponent = 0.0;
  return out;
}

HoloFunction rational_function(std::vector<Complex> num, std::vector<Complex> den) {
  if (poly_degree(den) < 0) throw InvalidParameters("rational_function: zero denominator");
  if (poly_degree(num) < 0) return constant_function(Complex(0, 0));
  const auto dnum = poly_derivative(num);
  const auto dden = poly_derivative(den);
  HoloFunction out;
  out.f = [num, den](Complex z) { return horner(num, z) / horner(den, z); };
  out.df = [num, den, dnum, dden](Complex z) {
    const Complex n = horner(num, z), d = horner(den, z);
    const Complex dn = horner(dnum, z), dd = horner(dden, z);
    return (dn * d - n * dd) / (d * d);
  };
  out.decay_exponent = std::max(0, poly_degree(den) - poly_degree(num));
  return out;
}

HoloFunction resolvent_function(Complex mu) {
  HoloFunction out;
  out.f = [mu](Complex z) { return 1.0 / (mu - z); };
  out.df = [mu](Complex z) {
    const Complex d = mu - z;
    return 1.0 / (d * d);
  };
  out.decay_exponent = 1.0;
  return out;
}

HoloFunction regularizer(int n, double eta_prime) {
  if (n < 1) throw InvalidParameters("regularizer: n must be >= 1");
  if (!(eta_prime > 0.0)) throw InvalidParameters("regularizer: eta_prime must be positive");
  const double nn = n;
  const double shift = 1.0 + eta_prime;
  HoloFunction out;
  out.f = [nn, shift](Complex z) {
    const Complex w = z + shift;
    return (nn / (nn + w)) * (nn * w / (1.0 + nn * w));
  };
  out.df = [nn, shift](Complex z) {
    const Complex w = z + shift;
    const Complex g = nn / (nn + w);
    const Complex h = nn * w / (1.0 + nn * w);
    const Complex dg = -nn / ((nn + w) * (nn + w));
    const Complex dh = nn / ((1.0 + nn * w) * (1.0 + nn * w));
    return dg * h + g * dh;
  };
  out.decay_exponent = 1.0;
  out.domain = Region(HalfPlane{-eta_prime});
  return out;
}

HoloFunction difference_regularizer(int n, double eta_prime) {
  if (n < 1) throw InvalidParameters("difference_regularizer: n must be >= 1");
  if (!(eta_prime > 0.0)) {
    throw InvalidParameters("difference_regularizer: eta_prime must be positive");
  }
  const double nn = n;
  const double shift = 1.0 + eta_prime;
  const auto rho = [shift](Complex z) {
    const Complex d = shift + z;  // 1 + eta' + z
    return z / (d * d);
  };
  const auto drho = [shift](Complex z) {
    const Complex d = shift + z;
    return (shift - z) / (d * d * d);
  };
  HoloFunction out;
  out.f = [nn, rho](Complex z) { return rho(nn * z) - rho(z / nn); };
  out.df = [nn, drho](Complex z) { return nn * drho(nn * z) - drho(z / nn) / nn; };
  out.decay_exponent = 1.0;
  out.domain = Region(HalfPlane{-eta_prime});
  return out;
}

HoloFunction product(const HoloFunction& f, const HoloFunction& g) {
  HoloFunction out;
  const auto ff = f, gg = g;
  out.f = [ff, gg](Complex z) { return ff.f(z) * gg.f(z); };
  out.df = [ff, gg](Complex z) {
    return ff.derivative(z) * gg.f(z) + ff.f(z) * gg.derivative(z);
  };
  out.decay_exponent = f.decay_exponent + g.decay_exponent;
  out.domain = f.domain ? f.domain : g.domain;
  return out;
}

HoloFunction scale(Complex factor, const HoloFunction& f) {
  HoloFunction out = f;
  const auto inner = f;
  out.f = [factor, inner](Complex z) { return factor * inner.f(z); };
  out.df = [factor, inner](Complex z) { return factor * inner.derivative(z); };
  return out;
}

bool check_dunford_class(const HoloFunction& f, const Region& region, double eps,
                         double bound, const GridSpec& grid) {
  bool ok = true;
  for_each_grid_point(region, grid, [&](Complex z) {
    if (!ok) return;
    const double az = std::abs(z);
    const double envelope = bound * std::pow(az, eps) / (1.0 + std::pow(az, 2.0 * eps));
    if (std::abs(f.f(z)) > envelope) ok = false;
  });
  return ok;
}

double sup_norm_estimate(const HoloFunction& f, const Region& region, const GridSpec& grid) {
  return sup_norm_estimate(f.f, region, grid);
}

Hinf1Estimate hinf1_seminorm_estimate(const HoloFunction& f, const Region& region,
                                      const GridSpec& grid) {
  return hinf1_seminorm_estimate(f.f, f.df, region, grid);
}

}  // namespace opcalc
