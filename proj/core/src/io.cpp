// SPDX-License-Identifier: Apache-2.0

#include "opcalc/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace opcalc {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

json parse_text(const std::string& text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw MalformedInput("invalid JSON document");
  return j;
}

double number_field(const json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_number()) {
    throw MalformedInput(std::string("missing or non-numeric field '") + field + "'");
  }
  return j[field].get<double>();
}

Complex complex_entry(const json& entry, const char* field) {
  if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
      !entry[1].is_number()) {
    throw MalformedInput(std::string("field '") + field + "' must hold [re, im] pairs");
  }
  return {entry[0].get<double>(), entry[1].get<double>()};
}

std::vector<Complex> coefficient_list(const json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_array()) {
    throw MalformedInput(std::string("missing coefficient array '") + field + "'");
  }
  std::vector<Complex> out;
  for (const auto& entry : j[field]) out.push_back(complex_entry(entry, field));
  return out;
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_object()) throw MalformedInput("matrix: expected an object");
  if (!j.contains("dim") || !j["dim"].is_number_integer()) {
    throw MalformedInput("matrix: missing integer field 'dim'");
  }
  const long dim = j["dim"].get<long>();
  if (dim <= 0) throw MalformedInput("matrix: 'dim' must be positive");
  if (!j.contains("data") || !j["data"].is_array() ||
      j["data"].size() != static_cast<std::size_t>(dim * dim)) {
    throw MalformedInput("matrix: 'data' must hold dim*dim [re, im] pairs");
  }
  ComplexMatrix m(dim, dim);
  std::size_t idx = 0;
  for (long r = 0; r < dim; ++r) {
    for (long c = 0; c < dim; ++c) {
      m(r, c) = complex_entry(j["data"][idx++], "data");
    }
  }
  if (!m.allFinite()) throw MalformedInput("matrix: 'data' entries must be finite");
  return m;
}

}  // namespace

ComplexMatrix parse_matrix_json(const std::string& text) {
  return matrix_from_json(parse_text(text));
}

std::string matrix_to_json(const ComplexMatrix& m) {
  std::ostringstream os;
  os << "{\"dim\": " << m.rows() << ", \"data\": [";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (r != 0 || c != 0) os << ", ";
      os << "[" << format_double(m(r, c).real()) << ", " << format_double(m(r, c).imag())
         << "]";
    }
  }
  os << "]}";
  return os.str();
}

Region parse_region_json(const std::string& text) {
  const json j = parse_text(text);
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw MalformedInput("region: missing string field 'kind'");
  }
  const std::string kind = j["kind"].get<std::string>();
  Region region = Sector{0.0};
  if (kind == "sector") {
    region = Sector{number_field(j, "sigma")};
  } else if (kind == "shifted_sector") {
    region = ShiftedSector{number_field(j, "a"), number_field(j, "sigma")};
  } else if (kind == "half_plane") {
    region = HalfPlane{number_field(j, "alpha")};
  } else if (kind == "strip") {
    region = Strip{number_field(j, "beta")};
  } else if (kind == "k_region") {
    region = KRegion{number_field(j, "sigma"), number_field(j, "a"), number_field(j, "r")};
  } else {
    throw MalformedInput("region: unknown kind '" + kind + "'");
  }
  try {
    validate(region);
  } catch (const InvalidParameters& e) {
    throw MalformedInput(std::string("region: ") + e.what());
  }
  return region;
}

std::string region_to_json(const Region& region) {
  std::ostringstream os;
  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Sector>) {
          os << "{\"kind\": \"sector\", \"sigma\": " << format_double(r.sigma) << "}";
        } else if constexpr (std::is_same_v<T, ShiftedSector>) {
          os << "{\"kind\": \"shifted_sector\", \"a\": " << format_double(r.a)
             << ", \"sigma\": " << format_double(r.sigma) << "}";
        } else if constexpr (std::is_same_v<T, HalfPlane>) {
          os << "{\"kind\": \"half_plane\", \"alpha\": " << format_double(r.alpha) << "}";
        } else if constexpr (std::is_same_v<T, Strip>) {
          os << "{\"kind\": \"strip\", \"beta\": " << format_double(r.beta) << "}";
        } else {
          os << "{\"kind\": \"k_region\", \"sigma\": " << format_double(r.sigma)
             << ", \"a\": " << format_double(r.a) << ", \"r\": " << format_double(r.r) << "}";
        }
      },
      region);
  return os.str();
}

HoloFunction parse_function_json(const std::string& text) {
  const json j = parse_text(text);
  if (!j.is_object()) throw MalformedInput("function: expected an object");
  if (j.contains("kind")) {
    if (!j["kind"].is_string()) throw MalformedInput("function: 'kind' must be a string");
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "resolvent") {
      if (!j.contains("mu")) throw MalformedInput("function: resolvent needs field 'mu'");
      return resolvent_function(complex_entry(j["mu"], "mu"));
    }
    if (kind == "regularizer") {
      if (!j.contains("n") || !j["n"].is_number_integer()) {
        throw MalformedInput("function: regularizer needs integer field 'n'");
      }
      return regularizer(j["n"].get<int>(), number_field(j, "eta_prime"));
    }
    throw MalformedInput("function: unknown kind '" + kind + "'");
  }
  return rational_function(coefficient_list(j, "num"), coefficient_list(j, "den"));
}

DilationModel parse_dilation_model_json(const std::string& text) {
  const json j = parse_text(text);
  if (!j.is_object() || !j.contains("T")) throw MalformedInput("model: missing field 'T'");
  DilationModel model;
  model.t_op = matrix_from_json(j["T"]);
  model.c = number_field(j, "c");
  model.alpha = number_field(j, "alpha");
  model.p = number_field(j, "p");
  return model;
}

std::string dilation_model_to_json(const DilationModel& model) {
  std::ostringstream os;
  os << "{\"T\": " << matrix_to_json(model.t_op) << ", \"c\": " << format_double(model.c)
     << ", \"alpha\": " << format_double(model.alpha)
     << ", \"p\": " << format_double(model.p) << "}";
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedInput("cannot open input file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open output file '" + path + "'");
  out << content;
}

}  // namespace opcalc
