// SPDX-License-Identifier: Apache-2.0
//
// opcalc: batch driver for the contour calculi, the shift-dilation checks,
// semigroup lower-bound certificates and the scalar norm-formula runs.
//
// Exit codes: 0 success, 2 non-convergence, 3 precondition violation,
// 4 malformed input.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "opcalc/dilation.hpp"
#include "opcalc/funcalc.hpp"
#include "opcalc/io.hpp"
#include "opcalc/random.hpp"
#include "opcalc/semigroup.hpp"

namespace {

using namespace opcalc;

constexpr int kExitOk = 0;
constexpr int kExitNonConvergence = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitMalformed = 4;

// Conventional name of the thrown error, for diagnostics.
const char* error_kind(const Error& e) {
  if (dynamic_cast<const SingularResolvent*>(&e)) return "SingularResolvent";
  if (dynamic_cast<const SpectrumOnContour*>(&e)) return "SpectrumOnContour";
  if (dynamic_cast<const SpectrumOutsideSector*>(&e)) return "SpectrumOutsideSector";
  if (dynamic_cast<const NoDecay*>(&e)) return "NoDecay";
  if (dynamic_cast<const DegenerateRegion*>(&e)) return "DegenerateRegion";
  if (dynamic_cast<const InvalidAngles*>(&e)) return "InvalidAngles";
  if (dynamic_cast<const NotInCommutant*>(&e)) return "NotInCommutant";
  if (dynamic_cast<const LowerBoundViolated*>(&e)) return "LowerBoundViolated";
  if (dynamic_cast<const MaximizerAtBoundary*>(&e)) return "MaximizerAtBoundary";
  if (dynamic_cast<const HypothesesViolated*>(&e)) return "HypothesesViolated";
  if (dynamic_cast<const Overflow*>(&e)) return "Overflow";
  if (dynamic_cast<const InvalidParameters*>(&e)) return "InvalidParameters";
  if (dynamic_cast<const EvaluationFailure*>(&e)) return "EvaluationFailure";
  if (dynamic_cast<const NonConvergence*>(&e)) return "NonConvergence";
  if (dynamic_cast<const MalformedInput*>(&e)) return "MalformedInput";
  return "Error";
}

struct CommonOpts {
  std::string input;
  std::string output;
  double tol = 1e-8;
  bool tol_from_flag = false;
  std::uint64_t seed = 1;
  std::string format = "json";
  std::string grid;  // MIN:MAX:COUNT
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--input", opts.input, "Input JSON path");
  cmd->add_option("--output", opts.output, "Output path (stdout when omitted)");
  cmd->add_option("--tol", opts.tol, "Tolerance (overrides a config-file value)")
      ->capture_default_str()
      ->each([&opts](const std::string&) { opts.tol_from_flag = true; });
  cmd->add_option("--seed", opts.seed, "PRNG seed (64-bit)")->capture_default_str();
  cmd->add_option("--format", opts.format, "Output format: json|csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  cmd->add_option("--grid", opts.grid, "Time grid as MIN:MAX:COUNT");
}

std::vector<double> parse_grid(const std::string& text, const std::string& fallback) {
  const std::string spec = text.empty() ? fallback : text;
  double lo = 0, hi = 0;
  long count = 0;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%ld", &lo, &hi, &count) != 3 || count < 2 ||
      !(hi > lo)) {
    throw MalformedInput("grid: expected MIN:MAX:COUNT with MAX > MIN, COUNT >= 2");
  }
  std::vector<double> grid(count);
  for (long i = 0; i < count; ++i) {
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return grid;
}

void emit(const CommonOpts& opts, const std::string& content) {
  if (opts.output.empty()) {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << '\n';
  } else {
    write_file(opts.output, content);
  }
}

std::string bool_json(bool b) { return b ? "true" : "false"; }

// ---------------------------------------------------------------------------
// fc: compute f(A) by contour quadrature.
// Config: {"matrix": {...}, "function": {...}, "region": {...}}.
// ---------------------------------------------------------------------------
int cmd_fc(const CommonOpts& opts) {
  if (opts.input.empty()) throw MalformedInput("fc: --input is required");
  nlohmann::json config =
      nlohmann::json::parse(read_file(opts.input), nullptr, /*allow_exceptions=*/false);
  if (config.is_discarded() || !config.is_object()) {
    throw MalformedInput("fc: config must be a JSON object");
  }
  const auto field = [&](const char* name) -> std::string {
    if (!config.contains(name)) {
      throw MalformedInput(std::string("fc: missing field '") + name + "'");
    }
    return config[name].dump();
  };
  const ComplexMatrix a = parse_matrix_json(field("matrix"));
  const HoloFunction f = parse_function_json(field("function"));
  const Region region = parse_region_json(field("region"));
  double tol = opts.tol;
  if (!opts.tol_from_flag && config.contains("tol") && config["tol"].is_number()) {
    tol = config["tol"].get<double>();
  }

  const QuadratureResult result = fc(f, a, region, tol);

  std::string oracle_deviation = "null";
  try {
    if (eigenvector_condition(a) < 1e6) {
      const ComplexMatrix oracle = apply_function_eigen(a, f.f);
      oracle_deviation = format_double(spectral_norm(result.value - oracle));
    }
  } catch (const Error&) {
    oracle_deviation = "null";
  }

  std::ostringstream os;
  os << "{\"value\": " << matrix_to_json(result.value)
     << ", \"error_estimate\": " << format_double(result.error_estimate)
     << ", \"nodes\": " << result.nodes_used << ", \"oracle_deviation\": " << oracle_deviation
     << "}";
  emit(opts, os.str());
  return result.converged ? kExitOk : kExitNonConvergence;
}

// ---------------------------------------------------------------------------
// dilate: run the dilation checks on a model file.
// ---------------------------------------------------------------------------
int cmd_dilate(const CommonOpts& opts, long g_samples, int x_samples, int v_samples) {
  if (opts.input.empty()) throw MalformedInput("dilate: --input is required");
  DilationModel model = parse_dilation_model_json(read_file(opts.input));
  model.validate();  // InvalidParameters("alpha below 2^{1-1/p}") maps to exit 3

  SplitMix64 rng(opts.seed);
  const int d = model.dim();
  QuotientOptions qopt;
  qopt.tol = std::min(1e-6, opts.tol);

  std::ostringstream checks;
  bool all_pass = true;
  const auto record = [&](const char* name, long samples, double worst_margin, bool pass) {
    if (checks.tellp() > 0) checks << ", ";
    checks << "{\"check\": \"" << name << "\", \"samples\": " << samples
           << ", \"worst_margin\": " << format_double(worst_margin)
           << ", \"pass\": " << bool_json(pass) << "}";
    all_pass = all_pass && pass;
  };

  // Norm equivalence of the embedding: |x|/alpha <= |iota x| <= |x|.
  {
    double worst = 0.0;
    bool pass = true;
    std::vector<double> iotas;
    for (int s = 0; s < x_samples; ++s) {
      ComplexVector x(d);
      for (int i = 0; i < d; ++i) x(i) = rng.complex_gaussian();
      if (x.norm() == 0.0) continue;
      const double q = iota_norm(model, x, qopt);
      iotas.push_back(q);
      const double lower = x.norm() / model.alpha;
      const double upper = x.norm();
      pass = pass && q >= lower * (1.0 - 1e-4) && q <= upper * (1.0 + 1e-8);
      worst = std::max(worst, std::max(lower * (1.0 - 1e-4) - q, q - upper * (1.0 + 1e-8)));
    }
    record("iota_sandwich", x_samples, worst, pass);
  }

  // Commutant image norms for U in {T, T^2, T^3, I+T}.
  {
    double worst = 0.0;
    bool pass = true;
    const ComplexMatrix id = ComplexMatrix::Identity(d, d);
    const std::vector<ComplexMatrix> us = {model.t_op, model.t_op * model.t_op,
                                           model.t_op * model.t_op * model.t_op,
                                           id + model.t_op};
    for (const auto& u : us) {
      for (int s = 0; s < std::max(1, x_samples / 4); ++s) {
        ComplexVector x(d);
        for (int i = 0; i < d; ++i) x(i) = rng.complex_gaussian();
        const double ux = (u * x).norm();
        if (ux == 0.0) continue;
        const double q = phi_image_norm(model, u, x, qopt);
        pass = pass && q >= ux / model.alpha * (1.0 - 1e-4) && q <= ux * (1.0 + 1e-8);
        worst =
            std::max(worst, std::max(ux / model.alpha * (1.0 - 1e-4) - q, q - ux * (1.0 + 1e-8)));
      }
    }
    record("commutant_image_norm", 4L * std::max(1, x_samples / 4), worst, pass);
  }

  // Lower bound |G z| >= (alpha - 1)|z|.
  {
    const GLowerBoundReport rep = g_lower_bound_check(model, g_samples, rng.next_u64());
    record("g_lower_bound", rep.samples, rep.bound - rep.min_ratio, rep.pass);
  }

  // Inverse action identities on random v.
  {
    double worst = 0.0;
    bool pass = true;
    for (int s = 0; s < v_samples; ++s) {
      BlockVector v;
      v.p = model.p;
      const int len = rng.uniform_int(1, 6);
      for (int k = 0; k < len; ++k) {
        ComplexVector b(d);
        for (int i = 0; i < d; ++i) b(i) = rng.complex_gaussian();
        v.blocks.push_back(b);
      }
      const InverseActionReport rep = inverse_action_check(model, v, 1e-6, qopt);
      pass = pass && rep.pass;
      worst = std::max(worst, rep.range_residual / std::max(v.norm(), 1e-300));
    }
    record("inverse_action", v_samples, worst, pass);
  }

  std::ostringstream os;
  os << "{\"model\": " << dilation_model_to_json(model) << ", \"seed\": " << opts.seed
     << ", \"checks\": [" << checks.str() << "]}";
  emit(opts, os.str());
  return all_pass ? kExitOk : kExitNonConvergence;
}

// ---------------------------------------------------------------------------
// semigroup: lower-bound certificate + per-time CSV.
// ---------------------------------------------------------------------------
int cmd_semigroup(const CommonOpts& opts, double t0, double alpha,
                  const std::string& cert_path) {
  if (opts.input.empty()) throw MalformedInput("semigroup: --input is required");
  const ComplexMatrix a = parse_matrix_json(read_file(opts.input));
  const std::vector<double> grid = parse_grid(opts.grid, "0.1:5.0:25");

  const LowerBoundCertificate cert = exponential_lower_bound_check(a, t0, alpha, grid);
  const GammaReport gamma = gamma_submultiplicativity_check(a, grid);

  std::ostringstream csv;
  csv << "t,sigma_min,nu_envelope,gamma\n";
  for (double t : grid) {
    const double smin = smallest_singular_value(matrix_exp(a, -t));
    csv << format_double(t) << "," << format_double(smin) << ","
        << format_double(cert.m * std::exp(cert.nu * t)) << ","
        << format_double(1.0 / smin) << "\n";
  }
  emit(opts, csv.str());

  std::ostringstream cert_json;
  cert_json << "{\"t0\": " << format_double(cert.t0) << ", \"alpha\": "
            << format_double(cert.alpha) << ", \"c\": " << format_double(cert.c)
            << ", \"nu\": " << format_double(cert.nu) << ", \"m\": " << format_double(cert.m)
            << ", \"refinement_change\": " << format_double(cert.refinement_change)
            << ", \"inverse_bound_margin\": " << format_double(cert.inverse_bound_margin)
            << ", \"lower_bound_pass\": " << bool_json(cert.pass)
            << ", \"gamma_pass\": " << bool_json(gamma.pass)
            << ", \"gamma_worst_ratio\": " << format_double(gamma.worst_ratio) << "}";
  if (!cert_path.empty()) {
    write_file(cert_path, cert_json.str());
  } else if (!opts.output.empty()) {
    write_file(opts.output + ".cert.json", cert_json.str());
  } else {
    std::cout << cert_json.str() << '\n';
  }
  return (cert.pass && gamma.pass) ? kExitOk : kExitNonConvergence;
}

// ---------------------------------------------------------------------------
// example32: the three norm-formula routes over a list of times.
// ---------------------------------------------------------------------------
int cmd_example32(const CommonOpts& opts, const std::string& phi_name,
                  const std::string& times_text, const std::string& report_path) {
  const PhiSpec& spec = phi_by_name(phi_name);
  std::vector<double> times;
  {
    std::istringstream is(times_text);
    std::string tok;
    while (std::getline(is, tok, ',')) {
      if (!tok.empty()) times.push_back(std::stod(tok));
    }
    if (times.empty()) throw MalformedInput("example32: --times must list at least one t");
  }
  for (double t : times) {
    if (!(t > 0.0 && t < 1.0)) {
      throw HypothesesViolated("example32: t must lie in (0,1)");
    }
  }

  const PhiValidation validation = validate_phi(spec);
  const auto rows = example32_identity_check(spec, times);

  std::ostringstream csv;
  csv << "t,norm_direct,norm_reduced,norm_young\n";
  for (double t : times) {
    const Example32Routes routes = example32_routes(spec, t);
    csv << format_double(t) << "," << format_double(routes.direct) << ","
        << format_double(routes.reduced) << "," << format_double(routes.young) << "\n";
  }
  emit(opts, csv.str());

  bool identity_pass = true;
  std::ostringstream rows_json;
  for (const auto& row : rows) {
    if (rows_json.tellp() > 0) rows_json << ", ";
    rows_json << "{\"t\": " << format_double(row.t)
              << ", \"constrained\": " << format_double(row.constrained)
              << ", \"conjugate\": " << format_double(row.conjugate)
              << ", \"maximizer\": " << format_double(row.maximizer)
              << ", \"ok\": " << bool_json(row.ok) << "}";
    identity_pass = identity_pass && row.ok;
  }
  std::ostringstream rep;
  rep << "{\"phi\": \"" << spec.name << "\", \"hypotheses_ok\": "
      << bool_json(validation.ok()) << ", \"identity\": [" << rows_json.str() << "]}";
  if (!report_path.empty()) {
    write_file(report_path, rep.str());
  } else if (!opts.output.empty()) {
    write_file(opts.output + ".report.json", rep.str());
  } else {
    std::cout << rep.str() << '\n';
  }
  return (validation.ok() && identity_pass) ? kExitOk : kExitNonConvergence;
}

// ---------------------------------------------------------------------------
// folklore: seminorm comparison constant and sampled ratios.
// ---------------------------------------------------------------------------
int cmd_folklore(const CommonOpts& opts, double eta, double epsilon, double a, double sigma,
                 double sigma_prime, int count) {
  const FolkloreConstants fc = folklore_constants(eta, epsilon, a, sigma, sigma_prime);
  const Region hp(HalfPlane{-eta});
  const Region k_outer(KRegion{sigma, a, -eta - epsilon});

  SplitMix64 rng(opts.seed);
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    // Rational test functions with poles strictly outside the enclosing
    // region: real poles left of min(a, -eta-eps), mirrored pairs above.
    const double rho = std::exp(rng.uniform(std::log(0.5), std::log(20.0)));
    const Complex mu(std::min(a, -eta - epsilon) - 0.3 - rho, 0.0);
    HoloFunction f = (i % 2 == 0)
                         ? resolvent_function(mu)
                         : product(resolvent_function(mu), resolvent_function(mu));
    const double seminorm = hinf1_seminorm_estimate(f, hp, GridSpec{.radius = 1e2}).value;
    const double sup = sup_norm_estimate(f, k_outer, GridSpec{.radius = 1e2});
    worst = std::max(worst, seminorm / std::max(sup, 1e-300));
  }

  const bool pass = worst <= fc.c_bound;
  std::ostringstream os;
  os << "{\"C_theoretical\": " << format_double(fc.c_bound)
     << ", \"zone_radius\": " << format_double(fc.zone_radius)
     << ", \"M\": " << format_double(fc.m_sup) << ", \"delta\": " << format_double(fc.delta)
     << ", \"worst_ratio_observed\": " << format_double(worst)
     << ", \"functions\": " << count << ", \"pass\": " << bool_json(pass) << "}";
  emit(opts, os.str());
  return pass ? kExitOk : kExitNonConvergence;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"opcalc: contour functional calculus, shift dilations and semigroup bounds"};
  app.require_subcommand(1);

  CommonOpts fc_opts;
  auto* fc_cmd = app.add_subcommand("fc", "Compute f(A) by contour quadrature");
  add_common(fc_cmd, fc_opts);

  CommonOpts dilate_opts;
  long g_samples = 10000;
  int x_samples = 20, v_samples = 10;
  auto* dilate_cmd = app.add_subcommand("dilate", "Run the dilation model checks");
  add_common(dilate_cmd, dilate_opts);
  dilate_cmd->add_option("--samples", g_samples, "Samples for the G lower bound")
      ->capture_default_str();
  dilate_cmd->add_option("--x-samples", x_samples, "Sample vectors for the norm sandwich")
      ->capture_default_str();
  dilate_cmd->add_option("--v-samples", v_samples, "Sample vectors for the inverse action")
      ->capture_default_str();

  CommonOpts sg_opts;
  double t0 = 1.0, alpha = 2.0;
  std::string cert_path;
  auto* sg_cmd = app.add_subcommand("semigroup", "Lower-bound certificate and CSV");
  add_common(sg_cmd, sg_opts);
  sg_cmd->add_option("--t0", t0, "Reference time for the single lower bound")
      ->capture_default_str();
  sg_cmd->add_option("--alpha", alpha, "Slack factor alpha > 1")->capture_default_str();
  sg_cmd->add_option("--cert", cert_path, "Certificate JSON path");

  CommonOpts ex_opts;
  std::string phi_name = "xsq";
  std::string times = "0.05,0.1,0.2,0.5";
  std::string report_path;
  auto* ex_cmd = app.add_subcommand("example32", "Norm-formula routes and identity check");
  add_common(ex_cmd, ex_opts);
  ex_cmd->add_option("--phi", phi_name, "Catalog name: xsq|xsq_half|xlog|xloglog")
      ->capture_default_str();
  ex_cmd->add_option("--times", times, "Comma-separated t values in (0,1)")
      ->capture_default_str();
  ex_cmd->add_option("--report", report_path, "Identity/hypotheses JSON path");

  CommonOpts fl_opts;
  double eta = 1.0, epsilon = 0.5, vertex = 1.0, sigma = 3.0 * std::numbers::pi / 4.0;
  double sigma_prime = 5.0 * std::numbers::pi / 8.0;
  int count = 20;
  auto* fl_cmd = app.add_subcommand("folklore", "Seminorm comparison constant check");
  add_common(fl_cmd, fl_opts);
  fl_cmd->add_option("--eta", eta)->capture_default_str();
  fl_cmd->add_option("--epsilon", epsilon)->capture_default_str();
  fl_cmd->add_option("--a", vertex)->capture_default_str();
  fl_cmd->add_option("--sigma", sigma)->capture_default_str();
  fl_cmd->add_option("--sigma-prime", sigma_prime)->capture_default_str();
  fl_cmd->add_option("--count", count, "Number of test functions")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (fc_cmd->parsed()) return cmd_fc(fc_opts);
    if (dilate_cmd->parsed()) return cmd_dilate(dilate_opts, g_samples, x_samples, v_samples);
    if (sg_cmd->parsed()) return cmd_semigroup(sg_opts, t0, alpha, cert_path);
    if (ex_cmd->parsed()) return cmd_example32(ex_opts, phi_name, times, report_path);
    if (fl_cmd->parsed()) {
      return cmd_folklore(fl_opts, eta, epsilon, vertex, sigma, sigma_prime, count);
    }
  } catch (const MalformedInput& e) {
    std::cerr << "error: " << error_kind(e) << ": " << e.what() << '\n';
    return kExitMalformed;
  } catch (const NonConvergence& e) {
    std::cerr << "error: " << error_kind(e) << ": " << e.what() << '\n';
    return kExitNonConvergence;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << error_kind(e) << ": " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitOk;
}
