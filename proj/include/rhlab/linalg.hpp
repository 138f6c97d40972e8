// Copyright (c) 2026 rhlab authors.
// SPDX-License-Identifier: MIT

#pragma once

#include <array>
#include <vector>

namespace rhlab {

// Dense row-major fixed-size matrices; large enough for the 4x4 symmetrized
// system blocks and the 3x3 velocity Jacobians.
using Mat3 = std::array<double, 9>;
using Mat4 = std::array<double, 16>;
using Vec4 = std::array<double, 4>;

// Eigenvalues of a symmetric 4x4 matrix by cyclic Jacobi sweeps, ascending.
std::array<double, 4> symmetric_eigenvalues_4(const Mat4& a);

// Eigenvalues of a general real 3x3 matrix via its characteristic cubic.
// Real roots land in `real_parts` (ascending); `complex_pair` is set when two
// roots form a conjugate pair (their common real part is still reported).
struct Spectrum3 {
    std::vector<double> real_roots;  // roots with negligible imaginary part
    bool complex_pair = false;
    double pair_real = 0.0;  // real part of the conjugate pair, if any
};
Spectrum3 eigenvalues_3(const Mat3& a);

}  // namespace rhlab
