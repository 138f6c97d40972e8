// Copyright (c) 2026 rhlab authors.
// SPDX-License-Identifier: MIT

#include "rhlab/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rhlab/parallel.hpp"
#include "rhlab/symhyp.hpp"

namespace rhlab {

RadiationField make_radiation_field(std::size_t groups, std::size_t ordinates,
                                    std::size_t cells, double value) {
    if (groups == 0 || ordinates == 0 || cells == 0)
        throw std::invalid_argument("make_radiation_field: empty extent");
    RadiationField f;
    f.groups = groups;
    f.ordinates = ordinates;
    f.cells = cells;
    f.data.assign(groups * ordinates * cells, value);
    return f;
}

RadiationField make_equilibrium_field(std::size_t cells, const FrequencyGrid& freq,
                                      const AngularQuadrature& quad,
                                      const PlanckSpectrum& bbar) {
    RadiationField f = make_radiation_field(freq.size(), quad.size(), cells);
    for (std::size_t g = 0; g < freq.size(); ++g) {
        const double bb = bbar(freq.node[g]);
        for (std::size_t k = 0; k < quad.size(); ++k)
            std::fill_n(f.slice(g, k), cells, bb);
    }
    return f;
}

CellIntensity gather_cell(const RadiationField& field, std::size_t cell,
                          std::vector<double>& buf) {
    buf.resize(field.groups * field.ordinates);
    for (std::size_t g = 0; g < field.groups; ++g)
        for (std::size_t k = 0; k < field.ordinates; ++k)
            buf[g * field.ordinates + k] = field.at(g, k, cell);
    CellIntensity view;
    view.data = buf.data();
    view.groups = field.groups;
    view.ordinates = field.ordinates;
    return view;
}

double integrate_along_ray(double i0_at_foot, double bbar_v,
                           const std::function<double(double)>& ka_along_path, double t,
                           double c, int segments, int gauss_order) {
    if (t < 0.0) throw std::invalid_argument("integrate_along_ray: negative duration");
    if (segments < 1 || gauss_order < 1)
        throw std::invalid_argument("integrate_along_ray: bad quadrature resolution");
    if (t == 0.0) return i0_at_foot;
    const GaussRule rule = gauss_legendre(gauss_order);
    const double seg = t / segments;
    double tau = 0.0;
    for (int s = 0; s < segments; ++s) {
        const double mid = (s + 0.5) * seg;
        for (int q = 0; q < gauss_order; ++q)
            tau += 0.5 * seg * rule.weight[q] *
                   ka_along_path(mid + 0.5 * seg * rule.node[q]);
    }
    return bbar_v + (i0_at_foot - bbar_v) * std::exp(-c * tau);
}

namespace {

struct WSampler {
    const Grid* grid;
    const Field* w;
    Sample mode;
    double operator()(const Vec3& p) const {
        return std::max(0.0, sample_field(*grid, *w, p, mode));
    }
};

void characteristic_ray(double* slice, const Grid& grid, const WSampler& ws, double v,
                        double bb, const Vec3& omega, const AbsorptionModel& absorption,
                        double c, double dt, bool periodic, bool any_absorption,
                        const GaussRule& rule, int segments, Field& scratch) {
    const Sample smode = periodic ? Sample::periodic : Sample::clamp;
    const double seg = dt / segments;
    std::copy(slice, slice + grid.cells(), scratch.begin());
    std::size_t idx = 0;
    for (int kz = 0; kz < grid.nz; ++kz)
        for (int jy = 0; jy < grid.ny; ++jy)
            for (int ix = 0; ix < grid.nx; ++ix, ++idx) {
                const Vec3 x = grid.center(ix, jy, kz);
                const Vec3 foot{x[0] - c * omega[0] * dt, x[1] - c * omega[1] * dt,
                                x[2] - c * omega[2] * dt};
                double i_foot;
                if (!periodic && !grid.contains(foot))
                    i_foot = bb;
                else
                    i_foot = std::max(0.0, sample_field(grid, scratch, foot, smode));
                if (!any_absorption) {
                    slice[idx] = i_foot;
                    continue;
                }
                double tau = 0.0;
                for (int s = 0; s < segments; ++s) {
                    const double mid = (s + 0.5) * seg;
                    for (std::size_t q = 0; q < rule.node.size(); ++q) {
                        const double ts = mid + 0.5 * seg * rule.node[q];
                        const Vec3 p{foot[0] + c * omega[0] * ts,
                                     foot[1] + c * omega[1] * ts,
                                     foot[2] + c * omega[2] * ts};
                        tau += 0.5 * seg * rule.weight[q] * absorption.ka(v, ws(p));
                    }
                }
                slice[idx] = bb + (i_foot - bb) * std::exp(-c * tau);
            }
}

void sweep_ray(double* slice, const Grid& grid, const Field& w, double v, double bb,
               const Vec3& omega, const AbsorptionModel& absorption, double c, double dt,
               bool periodic, Field& scratch) {
    std::copy(slice, slice + grid.cells(), scratch.begin());
    const int n[3] = {grid.nx, grid.ny, grid.nz};
    std::size_t idx = 0;
    for (int kz = 0; kz < grid.nz; ++kz)
        for (int jy = 0; jy < grid.ny; ++jy)
            for (int ix = 0; ix < grid.nx; ++ix, ++idx) {
                double flux = 0.0;
                const int pos[3] = {ix, jy, kz};
                for (int axis = 0; axis < 3; ++axis) {
                    if (n[axis] == 1 || omega[axis] == 0.0) continue;
                    const std::ptrdiff_t stride =
                        axis == 0 ? 1
                                  : (axis == 1 ? grid.nx
                                               : static_cast<std::ptrdiff_t>(grid.nx) *
                                                     grid.ny);
                    const int step = omega[axis] > 0.0 ? -1 : 1;
                    const int q = pos[axis] + step;
                    double upstream;
                    if (q < 0 || q >= n[axis]) {
                        if (periodic) {
                            const int qa = (q + n[axis]) % n[axis];
                            upstream = scratch[static_cast<std::ptrdiff_t>(idx) +
                                               (qa - pos[axis]) * stride];
                        } else {
                            upstream = bb;
                        }
                    } else {
                        upstream = scratch[static_cast<std::ptrdiff_t>(idx) +
                                           step * stride];
                    }
                    flux += std::abs(omega[axis]) / grid.h[axis] *
                            (scratch[idx] - upstream);
                }
                const double i_star = scratch[idx] - c * dt * flux;
                const double ka = absorption.ka(v, std::max(0.0, w[idx]));
                slice[idx] = (i_star + c * dt * ka * bb) / (1.0 + c * dt * ka);
            }
}

}  // namespace

double transport_dt_limit(const Grid& grid, const AngularQuadrature& quad, double c,
                          TransportBackend backend) {
    if (c <= 0.0) throw std::invalid_argument("transport_dt_limit: c must be positive");
    if (backend == TransportBackend::characteristic)
        return std::numeric_limits<double>::infinity();
    double max_rate = 0.0;
    const int n[3] = {grid.nx, grid.ny, grid.nz};
    for (std::size_t k = 0; k < quad.size(); ++k) {
        double rate = 0.0;
        for (int axis = 0; axis < 3; ++axis)
            if (n[axis] > 1) rate += std::abs(quad.omega[k][axis]) / grid.h[axis];
        max_rate = std::max(max_rate, rate);
    }
    if (max_rate <= 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / (c * max_rate);
}

TransportStatus transport_step(RadiationField& field, const Grid& grid,
                               const Field& w_field, const AngularQuadrature& quad,
                               const FrequencyGrid& freq,
                               const AbsorptionModel& absorption,
                               const PlanckSpectrum& bbar,
                               const ScatteringKernel& scattering, double c,
                               double gamma, double dt, const TransportOptions& opt) {
    if (field.groups != freq.size() || field.ordinates != quad.size() ||
        field.cells != grid.cells())
        throw std::invalid_argument("transport_step: field extents do not match grids");
    if (w_field.size() != grid.cells())
        throw std::invalid_argument("transport_step: w field does not match grid");
    if (dt <= 0.0) throw std::invalid_argument("transport_step: dt must be positive");
    TransportStatus status;

    const bool periodic = opt.boundary == RadiationBoundary::periodic;
    if (opt.backend == TransportBackend::sweep) {
        const double limit = transport_dt_limit(grid, quad, c, opt.backend);
        if (std::isfinite(limit) && dt > limit * (1.0 + 1e-12)) {
            status.accepted = false;
            status.required_dt = limit;
            return status;
        }
    }

    double w_max = 0.0;
    for (double w : w_field) w_max = std::max(w_max, w);
    const bool any_absorption = absorption.name != "zero" && w_max > 0.0;

    const GaussRule rule = gauss_legendre(std::max(1, opt.path_gauss_order));
    const int segments = std::max(1, opt.path_segments);
    const WSampler ws{&grid, &w_field,
                      periodic ? Sample::periodic : Sample::clamp};

    const std::size_t rays = field.groups * field.ordinates;
    parallel_for(rays, [&](std::size_t begin, std::size_t end) {
        Field scratch(grid.cells());
        for (std::size_t r = begin; r < end; ++r) {
            const std::size_t g = r / field.ordinates;
            const std::size_t k = r % field.ordinates;
            const double v = freq.node[g];
            const double bb = bbar(v);
            if (opt.backend == TransportBackend::characteristic)
                characteristic_ray(field.slice(g, k), grid, ws, v, bb, quad.omega[k],
                                   absorption, c, dt, periodic, any_absorption, rule,
                                   segments, scratch);
            else
                sweep_ray(field.slice(g, k), grid, w_field, v, bb, quad.omega[k],
                          absorption, c, dt, periodic, scratch);
        }
    });

    if (scattering.enabled) {
        parallel_for(grid.cells(), [&](std::size_t begin, std::size_t end) {
            std::vector<double> buf;
            for (std::size_t cell = begin; cell < end; ++cell) {
                const double w = std::max(0.0, w_field[cell]);
                if (w == 0.0) continue;
                const double rho = rho_from_w(w, gamma);
                const CellIntensity snapshot = gather_cell(field, cell, buf);
                for (std::size_t g = 0; g < field.groups; ++g) {
                    const double v = freq.node[g];
                    for (std::size_t k = 0; k < field.ordinates; ++k) {
                        double gain = 0.0, loss = 0.0;
                        for (std::size_t gp = 0; gp < field.groups; ++gp) {
                            const double vp = freq.node[gp];
                            for (std::size_t kp = 0; kp < field.ordinates; ++kp) {
                                const double wq =
                                    freq.weight[gp] * quad.weight[kp];
                                const double mu =
                                    dot(quad.omega[k], quad.omega[kp]);
                                gain += wq * (v / vp) *
                                        scattering.in(vp, v, mu) *
                                        snapshot.at(gp, kp);
                                loss += wq * scattering.out(v, vp, mu);
                            }
                        }
                        const double I = snapshot.at(g, k);
                        double updated;
                        if (opt.implicit_scattering_loss)
                            updated = (I + c * dt * rho * gain) /
                                      (1.0 + c * dt * rho * loss);
                        else
                            updated = I + c * dt * rho * (gain - loss * I);
                        field.at(g, k, cell) = std::max(0.0, updated);
                    }
                }
            }
        });
    }
    return status;
}

RadiationMoments radiation_moments(const RadiationField& field,
                                   const AngularQuadrature& quad,
                                   const FrequencyGrid& freq, double c) {
    if (field.groups != freq.size() || field.ordinates != quad.size())
        throw std::invalid_argument("radiation_moments: grid mismatch");
    RadiationMoments m;
    m.flux.x.assign(field.cells, 0.0);
    m.flux.y.assign(field.cells, 0.0);
    m.flux.z.assign(field.cells, 0.0);
    for (auto& comp : m.pressure) comp.assign(field.cells, 0.0);
    m.angle_integrated.assign(field.cells, 0.0);
    for (std::size_t g = 0; g < field.groups; ++g)
        for (std::size_t k = 0; k < field.ordinates; ++k) {
            const double wq = freq.weight[g] * quad.weight[k];
            const Vec3 om = quad.omega[k];
            const double* slice = field.slice(g, k);
            for (std::size_t cell = 0; cell < field.cells; ++cell) {
                const double wI = wq * slice[cell];
                m.flux.x[cell] += wI * om[0];
                m.flux.y[cell] += wI * om[1];
                m.flux.z[cell] += wI * om[2];
                m.pressure[0][cell] += wI * om[0] * om[0] / c;
                m.pressure[1][cell] += wI * om[0] * om[1] / c;
                m.pressure[2][cell] += wI * om[0] * om[2] / c;
                m.pressure[3][cell] += wI * om[1] * om[1] / c;
                m.pressure[4][cell] += wI * om[1] * om[2] / c;
                m.pressure[5][cell] += wI * om[2] * om[2] / c;
                m.angle_integrated[cell] += wI;
            }
        }
    return m;
}

double max_equilibrium_deviation(const RadiationField& field, const FrequencyGrid& freq,
                                 const PlanckSpectrum& bbar, const Mask* mask) {
    double dev = 0.0;
    for (std::size_t g = 0; g < field.groups; ++g) {
        const double bb = bbar(freq.node[g]);
        for (std::size_t k = 0; k < field.ordinates; ++k) {
            const double* slice = field.slice(g, k);
            for (std::size_t cell = 0; cell < field.cells; ++cell) {
                if (mask && !(*mask)[cell]) continue;
                dev = std::max(dev, std::abs(slice[cell] - bb));
            }
        }
    }
    return dev;
}

}  // namespace rhlab
