// Copyright (c) 2026 rhlab authors.
// SPDX-License-Identifier: MIT

#include "rhlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rhlab {

double Grid::min_h() const {
    double m = h[0];
    if (ny > 1) m = std::min(m, h[1]);
    if (nz > 1) m = std::min(m, h[2]);
    return m;
}

bool Grid::contains(const Vec3& p) const {
    const Vec3 hi = upper();
    for (int a = 0; a < 3; ++a) {
        if (n(a) == 1) continue;
        if (p[a] < origin[a] || p[a] > hi[a]) return false;
    }
    return true;
}

Grid make_grid_1d(int nx, double x0, double x1) {
    if (nx < 1 || x1 <= x0) throw std::invalid_argument("make_grid_1d: bad extents");
    Grid g;
    g.nx = nx;
    g.ny = g.nz = 1;
    g.origin = {x0, 0.0, 0.0};
    g.h = {(x1 - x0) / nx, 1.0, 1.0};
    g.dim = 1;
    return g;
}

Grid make_grid_3d(int nx, int ny, int nz, const Vec3& lo, const Vec3& hi) {
    if (nx < 1 || ny < 1 || nz < 1) throw std::invalid_argument("make_grid_3d: bad counts");
    Grid g;
    g.nx = nx;
    g.ny = ny;
    g.nz = nz;
    g.origin = lo;
    g.h = {(hi[0] - lo[0]) / nx, (hi[1] - lo[1]) / ny, (hi[2] - lo[2]) / nz};
    for (int a = 0; a < 3; ++a)
        if (g.h[a] <= 0.0) throw std::invalid_argument("make_grid_3d: bad extents");
    g.dim = 3;
    return g;
}

Vec3Field make_vec3_field(std::size_t cells, double value) {
    Vec3Field f;
    f.x.assign(cells, value);
    f.y.assign(cells, value);
    f.z.assign(cells, value);
    return f;
}

namespace {

// Per-axis interpolation stencil: two node indices and the fractional weight
// of the upper node. theta may leave [0,1] only in extrapolate mode.
struct AxisStencil {
    int i0 = 0, i1 = 0;
    double theta = 0.0;
};

AxisStencil axis_stencil(int n, double origin, double h, double p, Sample mode) {
    AxisStencil s;
    if (n == 1) return s;
    const double t = (p - origin) / h - 0.5;
    double base = std::floor(t);
    int i0 = static_cast<int>(base);
    double theta = t - base;
    switch (mode) {
        case Sample::periodic: {
            auto wrap = [n](int i) {
                int r = i % n;
                return r < 0 ? r + n : r;
            };
            s.i0 = wrap(i0);
            s.i1 = wrap(i0 + 1);
            s.theta = theta;
            return s;
        }
        case Sample::clamp:
        case Sample::extrapolate: {
            if (i0 < 0) {
                theta += i0;  // keep i0*h + theta*h invariant
                i0 = 0;
            }
            if (i0 > n - 2) {
                theta += i0 - (n - 2);
                i0 = n - 2;
            }
            if (mode == Sample::clamp) theta = std::clamp(theta, 0.0, 1.0);
            s.i0 = i0;
            s.i1 = i0 + 1;
            s.theta = theta;
            return s;
        }
    }
    return s;
}

}  // namespace

double sample_field(const Grid& g, const Field& f, const Vec3& p, Sample mode) {
    const AxisStencil sx = axis_stencil(g.nx, g.origin[0], g.h[0], p[0], mode);
    const AxisStencil sy = axis_stencil(g.ny, g.origin[1], g.h[1], p[1], mode);
    const AxisStencil sz = axis_stencil(g.nz, g.origin[2], g.h[2], p[2], mode);
    const int xi[2] = {sx.i0, sx.i1};
    const int yi[2] = {sy.i0, sy.i1};
    const int zi[2] = {sz.i0, sz.i1};
    const double wx[2] = {1.0 - sx.theta, sx.theta};
    const double wy[2] = {1.0 - sy.theta, sy.theta};
    const double wz[2] = {1.0 - sz.theta, sz.theta};
    double v = 0.0;
    for (int a = 0; a < (g.nx > 1 ? 2 : 1); ++a)
        for (int b = 0; b < (g.ny > 1 ? 2 : 1); ++b)
            for (int c = 0; c < (g.nz > 1 ? 2 : 1); ++c) {
                const double w = (g.nx > 1 ? wx[a] : 1.0) * (g.ny > 1 ? wy[b] : 1.0) *
                                 (g.nz > 1 ? wz[c] : 1.0);
                v += w * f[g.index(xi[a], yi[b], zi[c])];
            }
    return v;
}

Vec3 sample_vec3(const Grid& g, const Vec3Field& f, const Vec3& p, Sample mode) {
    return {sample_field(g, f.x, p, mode), sample_field(g, f.y, p, mode),
            sample_field(g, f.z, p, mode)};
}

double sample_nonnegative(const Grid& g, const Field& f, const Vec3& p, Sample mode) {
    return std::max(0.0, sample_field(g, f, p, mode));
}

namespace {

inline int wrap_index(int i, int n) {
    int r = i % n;
    return r < 0 ? r + n : r;
}

double derivative_at_axis(const Grid& g, const Field& f, int axis, int i, int j, int k,
                          Sample mode) {
    const int n = g.n(axis);
    if (n == 1) return 0.0;
    const int pos = axis == 0 ? i : (axis == 1 ? j : k);
    auto value = [&](int q) {
        int t[3] = {i, j, k};
        t[axis] = q;
        return f[g.index(t[0], t[1], t[2])];
    };
    const double hh = g.h[axis];
    if (mode == Sample::periodic)
        return (value(wrap_index(pos + 1, n)) - value(wrap_index(pos - 1, n))) / (2.0 * hh);
    if (pos == 0) return (value(1) - value(0)) / hh;
    if (pos == n - 1) return (value(n - 1) - value(n - 2)) / hh;
    return (value(pos + 1) - value(pos - 1)) / (2.0 * hh);
}

}  // namespace

Field derivative(const Grid& g, const Field& f, int axis, Sample mode) {
    Field d(g.cells(), 0.0);
    if (g.n(axis) == 1) return d;
    for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                d[g.index(i, j, k)] = derivative_at_axis(g, f, axis, i, j, k, mode);
    return d;
}

double divergence_at(const Grid& g, const Vec3Field& u, int i, int j, int k, Sample mode) {
    return derivative_at_axis(g, u.x, 0, i, j, k, mode) +
           derivative_at_axis(g, u.y, 1, i, j, k, mode) +
           derivative_at_axis(g, u.z, 2, i, j, k, mode);
}

Field divergence(const Grid& g, const Vec3Field& u, Sample mode) {
    Field d(g.cells(), 0.0);
    for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                d[g.index(i, j, k)] = divergence_at(g, u, i, j, k, mode);
    return d;
}

Mask ball_mask_conservative(const Grid& g, const Vec3& center, double radius) {
    Mask m(g.cells(), 0);
    const double r2 = radius * radius;
    for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const Vec3 c = g.center(i, j, k);
                // farthest corner of the cell from the ball center, per axis
                double d2 = 0.0;
                for (int a = 0; a < 3; ++a) {
                    if (g.n(a) == 1) continue;
                    const double d = std::abs(c[a] - center[a]) + 0.5 * g.h[a];
                    d2 += d * d;
                }
                if (d2 <= r2) m[g.index(i, j, k)] = 1;
            }
    return m;
}

Mask ball_mask_dilated(const Grid& g, const Vec3& center, double radius, double dilation) {
    Mask m(g.cells(), 0);
    const double r = radius + dilation;
    const double r2 = r * r;
    for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const Vec3 c = g.center(i, j, k);
                double d2 = 0.0;
                for (int a = 0; a < 3; ++a) {
                    if (g.n(a) == 1) continue;
                    const double d = c[a] - center[a];
                    d2 += d * d;
                }
                if (d2 <= r2) m[g.index(i, j, k)] = 1;
            }
    return m;
}

double mask_volume(const Grid& g, const Mask& m) {
    std::size_t count = 0;
    for (auto b : m) count += b;
    return static_cast<double>(count) * g.cell_volume();
}

}  // namespace rhlab
