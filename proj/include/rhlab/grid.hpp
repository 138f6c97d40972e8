// Copyright (c) 2026 rhlab authors.
// SPDX-License-Identifier: MIT

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace rhlab {

using Vec3 = std::array<double, 3>;
using Field = std::vector<double>;
using Mask = std::vector<std::uint8_t>;

inline double dot(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

// How a sampler treats points outside the domain box.
enum class Sample {
    periodic,     // wrap around
    clamp,        // constant continuation of the outermost cell values
    extrapolate,  // linear continuation of the outermost cell gradient
};

// Uniform cell-centered Cartesian grid. One-dimensional runs use ny = nz = 1;
// every axis loop skips size-1 axes.
struct Grid {
    int nx = 1, ny = 1, nz = 1;
    Vec3 origin{0.0, 0.0, 0.0};  // lower corner of the domain box
    Vec3 h{1.0, 1.0, 1.0};       // cell widths
    int dim = 1;                 // declared dimension (1 or 3)

    std::size_t cells() const {
        return static_cast<std::size_t>(nx) * ny * nz;
    }
    double cell_volume() const { return h[0] * h[1] * h[2]; }
    int n(int axis) const { return axis == 0 ? nx : (axis == 1 ? ny : nz); }
    double min_h() const;
    std::size_t index(int i, int j, int k) const {
        return (static_cast<std::size_t>(k) * ny + j) * nx + i;
    }
    Vec3 center(int i, int j, int k) const {
        return {origin[0] + (i + 0.5) * h[0], origin[1] + (j + 0.5) * h[1],
                origin[2] + (k + 0.5) * h[2]};
    }
    Vec3 upper() const {
        return {origin[0] + nx * h[0], origin[1] + ny * h[1], origin[2] + nz * h[2]};
    }
    bool contains(const Vec3& p) const;
};

Grid make_grid_1d(int nx, double x0, double x1);
Grid make_grid_3d(int nx, int ny, int nz, const Vec3& lo, const Vec3& hi);

struct Vec3Field {
    Field x, y, z;
    std::size_t size() const { return x.size(); }
    Vec3 at(std::size_t c) const { return {x[c], y[c], z[c]}; }
    void set(std::size_t c, const Vec3& v) {
        x[c] = v[0];
        y[c] = v[1];
        z[c] = v[2];
    }
};
Vec3Field make_vec3_field(std::size_t cells, double value = 0.0);

// Multilinear interpolation of a cell-centered field at an arbitrary point.
double sample_field(const Grid& g, const Field& f, const Vec3& p, Sample mode);
Vec3 sample_vec3(const Grid& g, const Vec3Field& f, const Vec3& p, Sample mode);

// Interpolation clipped at zero from below (used for densities along rays).
double sample_nonnegative(const Grid& g, const Field& f, const Vec3& p, Sample mode);

// Centered-difference spatial operators; one-sided at clamp boundaries,
// identically zero along size-1 axes.
Field derivative(const Grid& g, const Field& f, int axis, Sample mode);
Field divergence(const Grid& g, const Vec3Field& u, Sample mode);
double divergence_at(const Grid& g, const Vec3Field& u, int i, int j, int k, Sample mode);

// Cells with every corner inside the ball |p - center| <= radius. Conservative
// by construction: the masked region never sticks out of the analytic ball.
Mask ball_mask_conservative(const Grid& g, const Vec3& center, double radius);
// Cells whose center lies within radius + dilation (used to excise a core
// region together with its one-cell neighborhood).
Mask ball_mask_dilated(const Grid& g, const Vec3& center, double radius, double dilation);

double mask_volume(const Grid& g, const Mask& m);

}  // namespace rhlab
