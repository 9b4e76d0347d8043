// SPDX-License-Identifier: Apache-2.0

#ifndef OPCALC_TYPES_HPP
#define OPCALC_TYPES_HPP

#include <complex>
#include <functional>

namespace opcalc {

using Complex = std::complex<double>;
using ScalarFunction = std::function<Complex(Complex)>;

}  // namespace opcalc

#endif  // OPCALC_TYPES_HPP
