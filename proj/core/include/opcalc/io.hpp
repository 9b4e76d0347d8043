// SPDX-License-Identifier: Apache-2.0
//
// JSON schemas for the CLI-facing types.
//
//   matrix:   {"dim": n, "data": [[re, im], ...]}   row-major
//   region:   {"kind": "sector"|"shifted_sector"|"half_plane"|"strip"|"k_region", ...}
//   function: {"num": [[re,im],...], "den": [[re,im],...]}
//             | {"kind": "resolvent", "mu": [re, im]}
//             | {"kind": "regularizer", "n": k, "eta_prime": v}
//   model:    {"T": matrix, "c": x, "alpha": x, "p": x}
//
// Angles are radians.  Doubles are serialized with 17 significant digits so
// matrix I/O round-trips bit-exactly.  Parse failures throw MalformedInput
// naming the offending field.

#ifndef OPCALC_IO_HPP
#define OPCALC_IO_HPP

#include <string>

#include "opcalc/dilation.hpp"
#include "opcalc/holo.hpp"
#include "opcalc/operators.hpp"
#include "opcalc/regions.hpp"

namespace opcalc {

// %.17g
std::string format_double(double v);

ComplexMatrix parse_matrix_json(const std::string& text);
std::string matrix_to_json(const ComplexMatrix& m);

Region parse_region_json(const std::string& text);
std::string region_to_json(const Region& region);

HoloFunction parse_function_json(const std::string& text);

DilationModel parse_dilation_model_json(const std::string& text);
std::string dilation_model_to_json(const DilationModel& model);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace opcalc

#endif  // OPCALC_IO_HPP
