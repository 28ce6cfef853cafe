// bloch.hpp
// Single-qubit states (I + m.sigma)/2 parameterised by a real 3-vector.

#pragma once

#include <array>
#include <cmath>

#include "matrix.hpp"

namespace qsep {

using Bloch = std::array<double, 3>;

inline constexpr Bloch x_axis{1.0, 0.0, 0.0};
inline constexpr Bloch y_axis{0.0, 1.0, 0.0};
inline constexpr Bloch z_axis{0.0, 0.0, 1.0};
inline constexpr Bloch zero_bloch{0.0, 0.0, 0.0};

inline double norm(const Bloch& m) { return std::sqrt(m[0] * m[0] + m[1] * m[1] + m[2] * m[2]); }

inline Bloch scaled(const Bloch& m, double a) { return {a * m[0], a * m[1], a * m[2]}; }

// m . sigma = [[z, x - iy], [x + iy, -z]]
inline ComplexMatrix sigma_dot(const Bloch& m) {
    return {{m[2], cplx{m[0], -m[1]}}, {cplx{m[0], m[1]}, -m[2]}};
}

// (I + m . sigma) / 2
inline ComplexMatrix qubit_state(const Bloch& m) {
    return {{0.5 * (1.0 + m[2]), cplx{0.5 * m[0], -0.5 * m[1]}},
            {cplx{0.5 * m[0], 0.5 * m[1]}, 0.5 * (1.0 - m[2])}};
}

} // namespace qsep
