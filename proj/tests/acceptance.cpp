// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: every check below runs at a pinned tolerance against an
// independent oracle (eigendecomposition, closed forms, dense least squares,
// or cross-route comparison) and prints one pass/fail line.  The process
// exits nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "opcalc/dilation.hpp"
#include "opcalc/funcalc.hpp"
#include "opcalc/io.hpp"
#include "opcalc/random.hpp"
#include "opcalc/semigroup.hpp"

using namespace opcalc;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

// ---------------------------------------------------------------- helpers

struct TestOperator {
  ComplexMatrix a;
  ComplexMatrix v;
  ComplexMatrix v_inv;
  ComplexVector lambdas;

  ComplexMatrix oracle(const ScalarFunction& f) const {
    ComplexVector fl(lambdas.size());
    for (Eigen::Index i = 0; i < lambdas.size(); ++i) fl(i) = f(lambdas(i));
    return v * fl.asDiagonal() * v_inv;
  }
};

// Diagonalizable matrix with eigenvalues in {0.5 <= |z| <= 3, |arg z| <= 0.35}
// and eigenvector condition far below 1e3.
TestOperator seeded_operator(SplitMix64& rng, int dim) {
  TestOperator op;
  op.lambdas = ComplexVector(dim);
  for (int i = 0; i < dim; ++i) {
    op.lambdas(i) = std::polar(rng.uniform(0.5, 3.0), rng.uniform(-0.35, 0.35));
  }
  op.v = ComplexMatrix::Identity(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) op.v(i, j) += 0.15 * rng.complex_gaussian();
  }
  op.v_inv = op.v.inverse();
  op.a = op.v * op.lambdas.asDiagonal() * op.v_inv;
  return op;
}

// Rational catalog with poles far to the left, admissible for all four
// contour families used below.
std::vector<HoloFunction> far_left_catalog() {
  const auto sq = [](Complex mu) {
    return product(resolvent_function(mu), resolvent_function(mu));
  };
  return {
      resolvent_function(Complex(-6, 0)),
      sq(Complex(-8, 2)),
      product(resolvent_function(Complex(-6, 0)), resolvent_function(Complex(-9, 0))),
      scale(Complex(2.5, 0), sq(Complex(-5.5, 0))),
      sq(Complex(-7, -1.5)),
  };
}

// The four calculi with contour parameters matching seeded_operator spectra.
std::vector<std::function<QuadratureResult(const HoloFunction&, const ComplexMatrix&, double)>>
four_calculi() {
  return {
      [](const HoloFunction& f, const ComplexMatrix& a, double tol) {
        return fc_sector(f, a, 0.9, tol);
      },
      [](const HoloFunction& f, const ComplexMatrix& a, double tol) {
        return fc_strip(f, a, 4.0, tol);
      },
      [](const HoloFunction& f, const ComplexMatrix& a, double tol) {
        return fc_halfplane(f, a, 0.3, tol);
      },
      [](const HoloFunction& f, const ComplexMatrix& a, double tol) {
        return fc_kregion(f, a, 2.0, -0.5, 0.2, tol);
      },
  };
}

DilationModel seeded_model(SplitMix64& rng, int dim) {
  DilationModel m;
  ComplexMatrix t(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) t(i, j) = rng.complex_gaussian();
  }
  if (smallest_singular_value(t) < 0.3) {
    t += (0.3 + 0.5 * spectral_norm(t)) * ComplexMatrix::Identity(dim, dim);
  }
  m.t_op = t;
  m.c = smallest_singular_value(t) * rng.uniform(0.6, 1.0);
  m.p = rng.uniform(1.4, 3.5);
  m.alpha = std::pow(2.0, 1.0 - 1.0 / m.p) * (1.0 + rng.uniform(0.05, 1.0));
  return m;
}

ComplexVector seeded_vector(SplitMix64& rng, int dim) {
  ComplexVector x(dim);
  for (int i = 0; i < dim; ++i) x(i) = rng.complex_gaussian();
  return x;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ------------------------------------------------------------- criteria

Outcome fc_oracle_suite() {
  const auto start = std::chrono::steady_clock::now();
  SplitMix64 rng(20260808);
  const auto catalog = far_left_catalog();
  const auto calculi = four_calculi();
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const int dim = 1 + (k % 8);
    const TestOperator op = seeded_operator(rng, dim);
    Eigen::JacobiSVD<ComplexMatrix> svd(op.v);
    const double cond = svd.singularValues()(0) / svd.singularValues()(dim - 1);
    if (cond >= 1e3) return {false, "eigenvector condition out of range"};
    for (const auto& run : calculi) {
      for (const HoloFunction& f : catalog) {
        const QuadratureResult r = run(f, op.a, 1e-9);
        if (!r.converged) return {false, "quadrature did not converge"};
        const ComplexMatrix expect = op.oracle(f.f);
        const double rel =
            spectral_norm(r.value - expect) / std::max(spectral_norm(expect), 1e-300);
        worst = std::max(worst, rel);
      }
    }
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  char buf[160];
  std::snprintf(buf, sizeof(buf), "max rel err %.2e over 50x4x5 cases, %.1f s", worst,
                seconds);
  return {worst <= 1e-6 && seconds <= 60.0, buf};
}

Outcome resolvent_reproduction() {
  SplitMix64 rng(411);
  const auto calculi = four_calculi();
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const TestOperator op = seeded_operator(rng, 1 + (k % 6));
    const Complex mu(-rng.uniform(5.0, 9.0), rng.uniform(-1.0, 1.0));
    const ComplexMatrix expect = resolvent(op.a, mu);
    for (const auto& run : calculi) {
      const QuadratureResult r = run(resolvent_function(mu), op.a, 1e-10);
      worst = std::max(worst, spectral_norm(r.value - expect));
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof(buf), "max |fc - resolvent| = %.2e", worst);
  return {worst <= 1e-8, buf};
}

Outcome strip_halfplane_shift() {
  SplitMix64 rng(532);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const TestOperator op = seeded_operator(rng, 1 + (k % 6));
    const Complex mu(-rng.uniform(5.0, 9.0), rng.uniform(-2.0, 2.0));
    const HoloFunction f = product(resolvent_function(mu), resolvent_function(mu));
    const QuadratureResult rs = fc_strip(f, op.a, 4.0, 1e-8);
    const QuadratureResult rh = fc_halfplane(f, op.a, 0.3, 1e-8);
    if (!rs.converged || !rh.converged) return {false, "quadrature did not converge"};
    worst = std::max(worst, spectral_norm(rs.value - rh.value));
  }
  char buf[96];
  std::snprintf(buf, sizeof(buf), "max |strip - halfplane| = %.2e", worst);
  return {worst <= 1e-6, buf};
}

Outcome multiplicativity() {
  SplitMix64 rng(689);
  const auto catalog = far_left_catalog();
  double worst = 0.0;
  for (int k = 0; k < 5; ++k) {
    const TestOperator op = seeded_operator(rng, 2 + k);
    for (std::size_t i = 0; i < catalog.size(); ++i) {
      for (std::size_t j = i; j < catalog.size(); ++j) {
        worst = std::max(worst, multiplicativity_check(catalog[i], catalog[j], op.a,
                                                       Region(Sector{0.9}), 1e-10));
      }
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof(buf), "max defect %.2e over 75 pairs", worst);
  return {worst <= 1e-8, buf};
}

Outcome embedding_sandwich() {
  SplitMix64 rng(20252025);
  double worst_low = 0.0, worst_high = 0.0;
  for (int k = 0; k < 100; ++k) {
    const DilationModel m = seeded_model(rng, 1 + (k % 6));
    for (int s = 0; s < 20; ++s) {
      const ComplexVector x = seeded_vector(rng, m.dim());
      if (x.norm() == 0.0) continue;
      const double q = iota_norm(m, x);
      worst_low = std::max(worst_low, x.norm() / m.alpha * (1.0 - 1e-4) - q);
      worst_high = std::max(worst_high, q - x.norm() * (1.0 + 1e-8));
    }
  }

  // scalar closed form at support 64 and the tight threshold case
  DilationModel scalar;
  scalar.t_op = ComplexMatrix(1, 1);
  scalar.t_op(0, 0) = 1.0;
  scalar.c = 1.0;
  scalar.alpha = 2.0;
  scalar.p = 2.0;
  BlockVector e1;
  e1.p = 2.0;
  e1.blocks.push_back(ComplexVector::Ones(1));
  const double q64 = distance_at_support(scalar, e1, 64);
  const bool closed_form = std::abs(q64 - 0.8660254037844386) <= 1e-4;

  scalar.alpha = std::sqrt(2.0);
  const double q_tight = distance_at_support(scalar, e1, 64);
  const bool tight = std::abs(q_tight - 1.0 / std::sqrt(2.0)) <= 1e-4;

  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "margins low %.2e high %.2e, scalar %.6f, tight %.6f", worst_low,
                worst_high, q64, q_tight);
  return {worst_low <= 0.0 && worst_high <= 0.0 && closed_form && tight, buf};
}

Outcome norm_inequality_commutant() {
  SplitMix64 rng(20252025);  // same model family as the sandwich
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const DilationModel m = seeded_model(rng, 1 + (k % 6));
    for (int s = 0; s < 20; ++s) (void)seeded_vector(rng, m.dim());  // keep stream aligned
    const ComplexMatrix id = ComplexMatrix::Identity(m.dim(), m.dim());
    const std::vector<ComplexMatrix> us = {m.t_op, m.t_op * m.t_op,
                                           m.t_op * m.t_op * m.t_op, id + m.t_op};
    for (const auto& u : us) {
      for (int s = 0; s < 3; ++s) {
        const ComplexVector x = seeded_vector(rng, m.dim());
        const double ux = (u * x).norm();
        if (ux == 0.0) continue;
        const double q = phi_image_norm(m, u, x);
        worst = std::max(worst, ux / m.alpha * (1.0 - 1e-4) - q);
        worst = std::max(worst, q - ux * (1.0 + 1e-8));
      }
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof(buf), "worst margin %.2e over 100 models x 4 U x 3 x", worst);
  return {worst <= 0.0, buf};
}

Outcome g_lower_bound() {
  SplitMix64 rng(20252025);
  double worst_gap = -1e300;
  for (int k = 0; k < 100; ++k) {
    const DilationModel m = seeded_model(rng, 1 + (k % 6));
    const GLowerBoundReport rep = g_lower_bound_check(m, 10000, rng.next_u64());
    if (!rep.pass) return {false, "a sampled ratio fell below alpha - 1"};
    worst_gap = std::max(worst_gap, (m.alpha - 1.0) * (1.0 - 1e-10) - rep.min_ratio);
  }
  char buf[96];
  std::snprintf(buf, sizeof(buf), "10^4 samples per model, worst slack %.2e", -worst_gap);
  return {true, buf};
}

Outcome inverse_action() {
  SplitMix64 rng(777);
  double worst_range = 0.0;
  bool consistency = true;
  for (int k = 0; k < 100; ++k) {
    const DilationModel m = seeded_model(rng, 1 + (k % 6));
    for (int s = 0; s < 50; ++s) {
      BlockVector v;
      v.p = m.p;
      const int len = rng.uniform_int(1, 5);
      for (int b = 0; b < len; ++b) v.blocks.push_back(seeded_vector(rng, m.dim()));
      const InverseActionReport rep = inverse_action_check(m, v, 1e-6);
      worst_range = std::max(worst_range, rep.range_residual / std::max(v.norm(), 1e-300));
      consistency = consistency && rep.q_shifted <= rep.q_v * (1.0 + 1e-6) + 1e-9;
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof(buf), "max qnorm(Gv)/|v| = %.2e over 5000 v", worst_range);
  return {worst_range <= 1e-6 && consistency, buf};
}

Outcome exponential_lower_bound() {
  std::vector<double> grid;
  for (int i = 1; i <= 40; ++i) grid.push_back(0.1 * i);

  // diagonal closed-form checkpoint
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = 2.0;
  const LowerBoundCertificate ref =
      exponential_lower_bound_check(d, 1.0, std::sqrt(2.0), grid);
  const bool checkpoint = std::abs(ref.nu - (-2.3465735902799727)) <= 1e-6;

  SplitMix64 rng(888);
  bool all = checkpoint && ref.pass;
  double worst_change = ref.refinement_change;
  for (int k = 0; k < 20; ++k) {
    const int dim = 1 + (k % 5);
    ComplexMatrix a(dim, dim);
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) a(i, j) = 0.3 * rng.complex_gaussian();
    }
    a += rng.uniform(0.5, 1.5) * ComplexMatrix::Identity(dim, dim);
    const double alpha = 1.0 + rng.uniform(0.2, 1.5);
    const LowerBoundCertificate cert = exponential_lower_bound_check(a, 1.0, alpha, grid);
    const double c_direct = smallest_singular_value(matrix_exp(a, -1.0));
    const bool nu_formula = std::abs(cert.nu - std::log(c_direct / alpha)) <= 1e-9;
    all = all && cert.pass && cert.m > 0.0 && cert.stable && nu_formula;
    worst_change = std::max(worst_change, cert.refinement_change);
  }
  char buf[128];
  std::snprintf(buf, sizeof(buf), "nu(diag) = %.7f, max refinement change %.2e%%", ref.nu,
                100.0 * worst_change);
  return {all, buf};
}

Outcome gamma_submultiplicative() {
  std::vector<double> grid;
  for (int i = 1; i <= 20; ++i) grid.push_back(0.25 * i);
  SplitMix64 rng(999);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const int dim = 1 + (k % 5);
    ComplexMatrix a(dim, dim);
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) a(i, j) = 0.3 * rng.complex_gaussian();
    }
    a += rng.uniform(0.5, 1.5) * ComplexMatrix::Identity(dim, dim);
    const GammaReport rep = gamma_submultiplicativity_check(a, grid);
    worst = std::max(worst, rep.worst_ratio);
    if (!rep.pass) return {false, "violation beyond 1e-10"};
  }
  char buf[96];
  std::snprintf(buf, sizeof(buf), "max gamma(t+s)/(gamma(t)gamma(s)) = %.12f", worst);
  return {worst <= 1.0 + 1e-10, buf};
}

Outcome example32_routes_criterion() {
  const double tol = std::log(1.01);
  double worst = 0.0;
  for (const PhiSpec& spec : phi_catalog()) {
    for (double t : {0.05, 0.1, 0.2, 0.5}) {
      const Example32Routes r = example32_routes(spec, t);
      worst = std::max({worst, std::abs(r.log_direct - r.log_reduced),
                        std::abs(r.log_direct - r.log_young)});
    }
  }
  const bool routes_ok = worst <= tol;

  const Example32Routes chk = example32_routes(phi_by_name("xsq"), 0.1);
  const bool checkpoint = std::abs(chk.direct - 1.2182493960703473) <= 0.01 * 1.2182;

  bool identity_ok = true;
  for (const PhiSpec& spec : phi_catalog()) {
    for (const IdentityCheckRow& row :
         example32_identity_check(spec, {0.05, 0.1, 0.2, 0.5})) {
      identity_ok = identity_ok && row.ok && row.maximizer >= std::log(1.0 / row.t) - 1e-9;
    }
  }

  bool monotone = true;
  for (const PhiSpec& spec : phi_catalog()) {
    double prev = -1e300;
    for (double t : {0.1, 0.05, 0.025}) {
      const double v = example32_routes(spec, t).log_direct;
      monotone = monotone && v > prev;
      prev = v;
    }
  }

  char buf[128];
  std::snprintf(buf, sizeof(buf), "route spread %.2e (log), xsq(0.1) = %.6f", worst,
                chk.direct);
  return {routes_ok && checkpoint && identity_ok && monotone, buf};
}

Outcome folklore_lemma() {
  const double eta = 1.0, eps = 0.5, a = 1.0;
  const double sigma = 3.0 * kPi / 4.0, sigma_prime = 5.0 * kPi / 8.0;
  const FolkloreConstants fc = folklore_constants(eta, eps, a, sigma, sigma_prime);
  const bool constant_ok = std::abs(fc.c_bound - 49.81) <= 5e-3;

  const Region hp(HalfPlane{-eta});
  const Region k(KRegion{sigma, a, -eta - eps});
  const GridSpec grid{.radius = 1e2, .points_per_direction = 384};
  SplitMix64 rng(313);
  double worst_ratio = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double rho = std::exp(rng.uniform(std::log(0.5), std::log(20.0)));
    const Complex mu(std::min(a, -eta - eps) - 0.3 - rho, rng.uniform(-3.0, 3.0));
    const HoloFunction f = (i % 2 == 0)
                               ? resolvent_function(mu)
                               : product(resolvent_function(mu), resolvent_function(mu));
    const double semi = hinf1_seminorm_estimate(f, hp, grid).value;
    const double sup = sup_norm_estimate(f, k, grid);
    worst_ratio = std::max(worst_ratio, semi / std::max(sup, 1e-300));
  }
  char buf[128];
  std::snprintf(buf, sizeof(buf), "C = %.4f, worst sampled ratio %.4f", fc.c_bound,
                worst_ratio);
  return {constant_ok && worst_ratio <= fc.c_bound, buf};
}

Outcome shift_identity() {
  SplitMix64 rng(131);
  const KRegion k{2.2, 0.0, -0.5};
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const int dim = 1 + (i % 4);
    TestOperator op;
    op.lambdas = ComplexVector(dim);
    for (int j = 0; j < dim; ++j) {
      op.lambdas(j) = Complex(rng.uniform(0.5, 3.0), rng.uniform(-1.0, 1.0));
    }
    op.v = ComplexMatrix::Identity(dim, dim);
    for (int r = 0; r < dim; ++r) {
      for (int c2 = 0; c2 < dim; ++c2) op.v(r, c2) += 0.15 * rng.complex_gaussian();
    }
    op.v_inv = op.v.inverse();
    op.a = op.v * op.lambdas.asDiagonal() * op.v_inv;

    const Complex mu(-rng.uniform(6.0, 10.0), rng.uniform(-1.0, 1.0));
    const HoloFunction f = product(resolvent_function(mu), resolvent_function(mu));
    const double eta_shift = rng.uniform(0.1, 0.8);
    const ShiftIdentityReport rep = resolvent_shift_identity_check(f, op.a, eta_shift, k, 1e-6);
    worst = std::max(worst, rep.defect);
  }
  char buf[96];
  std::snprintf(buf, sizeof(buf), "max defect %.2e over 10 cases", worst);
  return {worst <= 1e-6, buf};
}

Outcome cli_determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "opcalc_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path model = dir / "model.json";
  std::ofstream(model) << R"({"T": {"dim": 2, "data": [[1.1, 0], [0.2, 0.1], [0, 0], [0.9, 0]]}, "c": 0.6, "alpha": 2.0, "p": 2.5})";

  const auto run = [&](const std::string& out) {
    const std::string cmd = std::string(OPCALC_CLI_PATH) + " dilate --input " +
                            model.string() + " --samples 300 --seed 42 --output " + out +
                            " > /dev/null 2>&1";
    return std::system(cmd.c_str());
  };
  const fs::path o1 = dir / "r1.json", o2 = dir / "r2.json";
  if (run(o1.string()) != 0 || run(o2.string()) != 0) {
    return {false, "dilate runs did not exit 0"};
  }
  const std::string b1 = slurp(o1), b2 = slurp(o2);
  const bool dilate_same = !b1.empty() && b1 == b2;

  const fs::path mat = dir / "a.json";
  std::ofstream(mat) << R"({"dim": 2, "data": [[1,0],[0,0],[0,0],[2,0]]})";
  const auto run_sg = [&](const std::string& csv, const std::string& cert) {
    const std::string cmd = std::string(OPCALC_CLI_PATH) + " semigroup --input " +
                            mat.string() + " --t0 1 --alpha 1.5 --grid 0.1:4:20 --output " +
                            csv + " --cert " + cert + " > /dev/null 2>&1";
    return std::system(cmd.c_str());
  };
  const fs::path c1 = dir / "c1.csv", c2 = dir / "c2.csv";
  const fs::path j1 = dir / "j1.json", j2 = dir / "j2.json";
  if (run_sg(c1.string(), j1.string()) != 0 || run_sg(c2.string(), j2.string()) != 0) {
    return {false, "semigroup runs did not exit 0"};
  }
  const bool sg_same = slurp(c1) == slurp(c2) && slurp(j1) == slurp(j2) && !slurp(c1).empty();
  return {dilate_same && sg_same, dilate_same && sg_same
                                      ? "byte-identical dilate and semigroup outputs"
                                      : "outputs differ between identical runs"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"functional-calculus oracle suite", fc_oracle_suite},
      {"resolvent reproduction through every calculus", resolvent_reproduction},
      {"strip/half-plane boundary shift", strip_halfplane_shift},
      {"calculus multiplicativity", multiplicativity},
      {"embedding norm sandwich", embedding_sandwich},
      {"commutant image norm inequality", norm_inequality_commutant},
      {"G lower bound", g_lower_bound},
      {"inverse action identities", inverse_action},
      {"exponential lower bound certificate", exponential_lower_bound},
      {"gamma submultiplicativity", gamma_submultiplicative},
      {"norm-formula route agreement", example32_routes_criterion},
      {"seminorm comparison constant", folklore_lemma},
      {"resolvent shift identity", shift_identity},
      {"CLI determinism", cli_determinism},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome out;
    try {
      out = criteria[i].run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%2zu/14] %s  %s: %s\n", i + 1, out.pass ? "PASS" : "FAIL",
                criteria[i].name, out.detail.c_str());
    std::fflush(stdout);
    if (!out.pass) ++failures;
  }
  std::printf("acceptance: %zu/14 criteria passed\n", criteria.size() - failures);
  return failures == 0 ? 0 : 1;
}
