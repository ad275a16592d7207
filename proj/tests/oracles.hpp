#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

#include "cgp/linalg.hpp"

namespace oracle {

using C = std::complex<double>;

/// exp(2 pi i z / r), computed directly.
inline C qpow(int r, C z) { return std::exp(C(0.0, 2.0 * M_PI / r) * z); }
inline C brace(int r, C z) { return qpow(r, z) - qpow(r, -z); }

/// Relative distance with a floor of 1 on the scale.
inline double rel(C a, C b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }
/// Relative distance without the floor.
inline double rel0(C a, C b) { return std::abs(a - b) / std::max({1e-300, std::abs(a), std::abs(b)}); }

inline double max_abs(const cgp::Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace oracle
