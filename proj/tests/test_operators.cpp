// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <complex>
#include <numbers>

#include "opcalc/operators.hpp"
#include "opcalc/random.hpp"

using namespace opcalc;

namespace {

ComplexMatrix diag2(Complex a, Complex b) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

ComplexMatrix random_matrix(SplitMix64& rng, int n, double scale = 1.0) {
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = scale * rng.complex_gaussian();
  }
  return m;
}

}  // namespace

TEST_CASE("resolvent: scalar and diagonal oracles") {
  ComplexMatrix a(1, 1);
  a(0, 0) = 1.0;
  CHECK(resolvent(a, Complex(2, 0))(0, 0).real() == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(resolvent(a, Complex(1, 0)), SingularResolvent);

  const ComplexMatrix d = diag2(1.0, 4.0);
  const ComplexMatrix r = resolvent(d, Complex(0, 1));
  CHECK(std::abs(r(0, 0) - 1.0 / Complex(-1, 1)) < 1e-12);
  CHECK(std::abs(r(1, 1) - 1.0 / Complex(-4, 1)) < 1e-12);
  CHECK(std::abs(r(0, 1)) < 1e-14);
}

TEST_CASE("resolvent: first resolvent identity on random matrices") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = rng.uniform_int(2, 6);
    const ComplexMatrix a = random_matrix(rng, n);
    const Complex lam(5.0 + rng.uniform(), 3.0 + rng.uniform());
    const Complex mu(-4.0 - rng.uniform(), -2.0);
    const ComplexMatrix rl = resolvent(a, lam);
    const ComplexMatrix rm = resolvent(a, mu);
    const ComplexMatrix lhs = rl - rm;
    const ComplexMatrix rhs = (mu - lam) * rl * rm;
    CHECK(spectral_norm(lhs - rhs) < 1e-10 * (1.0 + spectral_norm(rl) * spectral_norm(rm)));
  }
}

TEST_CASE("matrix_exp: identity, diagonal, nilpotent") {
  const ComplexMatrix z = ComplexMatrix::Zero(3, 3);
  CHECK(spectral_norm(matrix_exp(z, 2.5) - ComplexMatrix::Identity(3, 3)) < 1e-14);

  const ComplexMatrix d = diag2(-1.0, -2.0);
  const ComplexMatrix e = matrix_exp(d, 1.0);
  CHECK(e(0, 0).real() == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(e(1, 1).real() == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));

  ComplexMatrix nil = ComplexMatrix::Zero(2, 2);
  nil(0, 1) = 1.0;
  const ComplexMatrix en = matrix_exp(nil, 3.0);
  CHECK(en(0, 0).real() == doctest::Approx(1.0));
  CHECK(en(0, 1).real() == doctest::Approx(3.0));
  CHECK(std::abs(en(1, 0)) < 1e-14);
}

TEST_CASE("matrix_exp: overflow guard and semigroup law") {
  ComplexMatrix big(1, 1);
  big(0, 0) = 800.0;
  CHECK_THROWS_AS(matrix_exp(big, 1.0), Overflow);

  SplitMix64 rng(5);
  const ComplexMatrix a = random_matrix(rng, 4);
  const ComplexMatrix lhs = matrix_exp(a, 0.7 + 0.4);
  const ComplexMatrix rhs = matrix_exp(a, 0.7) * matrix_exp(a, 0.4);
  CHECK(spectral_norm(lhs - rhs) < 1e-10 * spectral_norm(lhs));
}

TEST_CASE("smallest_singular_value: diagonal, singular, semigroup") {
  CHECK(smallest_singular_value(diag2(2.0, 3.0)) == doctest::Approx(2.0));
  ComplexMatrix s = ComplexMatrix::Zero(2, 2);
  s(0, 0) = 1.0;
  CHECK(smallest_singular_value(s) == doctest::Approx(0.0));
  const ComplexMatrix t = matrix_exp(diag2(1.0, 2.0), -1.0);
  CHECK(smallest_singular_value(t) == doctest::Approx(std::exp(-2.0)).epsilon(1e-10));
}

TEST_CASE("smallest_singular_value: reciprocal of inverse norm") {
  SplitMix64 rng(17);
  for (int trial = 0; trial < 4; ++trial) {
    ComplexMatrix a = random_matrix(rng, 5);
    a += 3.0 * ComplexMatrix::Identity(5, 5);  // keep it invertible
    const double smin = smallest_singular_value(a);
    const double inv_norm = spectral_norm(a.inverse());
    CHECK(smin * inv_norm == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("growth_bound_fit: diagonal, zero and Jordan generators") {
  std::vector<double> grid;
  for (int i = 1; i <= 40; ++i) grid.push_back(0.1 * i);

  const GrowthFit f1 = growth_bound_fit(diag2(1.0, 2.0), grid);
  CHECK(f1.omega == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(f1.m == doctest::Approx(1.0).epsilon(1e-9));

  const GrowthFit f2 = growth_bound_fit(ComplexMatrix::Zero(2, 2), grid);
  CHECK(f2.omega == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(f2.m == doctest::Approx(1.0).epsilon(1e-12));

  ComplexMatrix jordan(2, 2);
  jordan << 1.0, -5.0, 0.0, 1.0;
  const GrowthFit f3 = growth_bound_fit(jordan, grid);
  CHECK(f3.m > 1.0);
  for (double t : grid) {
    const double norm = spectral_norm(matrix_exp(jordan, -t));
    CHECK(norm <= f3.m * std::exp(f3.omega * t) * (1.0 + 1e-10));
  }
}

TEST_CASE("sectoriality_constant: scalar, diagonal, violation") {
  ComplexMatrix one(1, 1);
  one(0, 0) = 1.0;
  const double c = sectoriality_constant(one, std::numbers::pi / 2.0);
  CHECK(c <= 1.0 + 1e-6);
  CHECK(c > 0.99);

  const double c2 = sectoriality_constant(diag2(1.0, 2.0), 3.0 * std::numbers::pi / 4.0);
  CHECK(c2 > 0.9);
  CHECK(c2 < 10.0);

  ComplexMatrix bad = diag2(-1.0, 1.0);
  CHECK_THROWS_AS(sectoriality_constant(bad, std::numbers::pi / 2.0), SpectrumOutsideSector);
}

TEST_CASE("laplace transform of the semigroup integrates to the resolvent") {
  // For T(t) = exp(-tA) and Re(lambda) below the spectral abscissa,
  // int_0^inf e^{lambda t} T(t) dt = (A - lambda I)^{-1}.
  const ComplexMatrix a = diag2(1.0, Complex(2.0, 1.0));
  const Complex lambda(-2.5, 0.3);
  const double t_max = 45.0;
  const int steps = 180000;
  const double h = t_max / steps;
  ComplexMatrix acc = ComplexMatrix::Zero(2, 2);
  for (int k = 0; k <= steps; ++k) {
    const double t = h * k;
    const double w = (k == 0 || k == steps) ? 0.5 : 1.0;
    acc += w * std::exp(lambda * t) * matrix_exp(a, -t);
  }
  acc *= h;
  ComplexMatrix target = a;
  target.diagonal().array() -= lambda;
  const ComplexMatrix expect = target.inverse();
  CHECK(spectral_norm(acc - expect) < 1e-6);
}

TEST_CASE("apply_function_eigen matches hand-built decompositions") {
  SplitMix64 rng(23);
  ComplexMatrix v = ComplexMatrix::Identity(3, 3) + 0.2 * random_matrix(rng, 3);
  ComplexMatrix lam = ComplexMatrix::Zero(3, 3);
  lam(0, 0) = 1.0;
  lam(1, 1) = Complex(2.0, 0.5);
  lam(2, 2) = 3.0;
  const ComplexMatrix a = v * lam * v.inverse();
  const ComplexMatrix fa = apply_function_eigen(a, [](Complex z) { return z * z; });
  CHECK(spectral_norm(fa - a * a) < 1e-9 * spectral_norm(a * a));
}
