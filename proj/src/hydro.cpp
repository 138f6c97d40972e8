// Copyright (c) 2026 rhlab authors.
// SPDX-License-Identifier: MIT

#include "rhlab/hydro.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>

#include "rhlab/parallel.hpp"
#include "rhlab/symhyp.hpp"

namespace rhlab {

namespace {

std::ptrdiff_t axis_stride(const Grid& g, int axis) {
    return axis == 0 ? 1
                     : (axis == 1 ? g.nx : static_cast<std::ptrdiff_t>(g.nx) * g.ny);
}

int axis_extent(const Grid& g, int axis) {
    return axis == 0 ? g.nx : (axis == 1 ? g.ny : g.nz);
}

// Index of the axis-neighbor `shift` cells away, honoring the boundary mode
// (periodic wrap, otherwise clamped to the edge cell).
std::size_t neighbor(const Grid& g, Sample mode, std::size_t idx, int pos, int axis,
                     int shift) {
    const int n = axis_extent(g, axis);
    int q = pos + shift;
    if (q < 0 || q >= n) {
        if (mode == Sample::periodic)
            q = (q % n + n) % n;
        else
            q = std::clamp(q, 0, n - 1);
    }
    return static_cast<std::size_t>(static_cast<std::ptrdiff_t>(idx) +
                                    (q - pos) * axis_stride(g, axis));
}

}  // namespace

FluidState make_fluid_state(const Grid& grid, double gamma) {
    if (!(gamma > 1.0 && gamma <= 3.0))
        throw std::invalid_argument("make_fluid_state: gamma must lie in (1, 3]");
    FluidState s;
    s.grid = grid;
    s.gamma = gamma;
    s.rho.assign(grid.cells(), 0.0);
    s.w.assign(grid.cells(), 0.0);
    s.u.x.assign(grid.cells(), 0.0);
    s.u.y.assign(grid.cells(), 0.0);
    s.u.z.assign(grid.cells(), 0.0);
    s.pressure.assign(grid.cells(), 0.0);
    s.vacuum.assign(grid.cells(), 1);
    return s;
}

void refresh_derived_fields(FluidState& state) {
    const double gamma = state.gamma;
    parallel_for(state.rho.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const double rho = state.rho[i];
            if (rho <= 0.0) {
                state.w[i] = 0.0;
                state.pressure[i] = 0.0;
            } else {
                state.w[i] = std::pow(rho, 0.5 * (gamma - 1.0));
                state.pressure[i] = std::pow(rho, gamma);
            }
        }
    });
}

void refresh_vacuum_mask(FluidState& state, bool from_current_rho) {
    const Grid& g = state.grid;
    if (from_current_rho) {
        double rho_max = 0.0;
        for (double r : state.rho) rho_max = std::max(rho_max, r);
        state.vacuum_threshold = 1e-12 * rho_max;
    }
    const double thr = state.vacuum_threshold;
    Mask below(g.cells());
    for (std::size_t i = 0; i < g.cells(); ++i)
        below[i] = state.rho[i] <= thr ? 1 : 0;
    std::size_t idx = 0;
    for (int kz = 0; kz < g.nz; ++kz)
        for (int jy = 0; jy < g.ny; ++jy)
            for (int ix = 0; ix < g.nx; ++ix, ++idx) {
                bool vac = below[idx];
                const int pos[3] = {ix, jy, kz};
                for (int axis = 0; axis < 3 && vac; ++axis) {
                    if (axis_extent(g, axis) == 1) continue;
                    for (int shift : {-1, 1})
                        if (!below[neighbor(g, state.boundary, idx, pos[axis], axis,
                                            shift)]) {
                            vac = false;
                            break;
                        }
                }
                state.vacuum[idx] = vac ? 1 : 0;
            }
}

double hydro_wave_rate(const FluidState& state) {
    const Grid& g = state.grid;
    const double root_gamma = std::sqrt(state.gamma);
    double rate = 0.0;
    for (std::size_t i = 0; i < g.cells(); ++i) {
        const double cs = root_gamma * state.w[i];
        double r = 0.0;
        if (g.nx > 1) r += (std::abs(state.u.x[i]) + cs) / g.h[0];
        if (g.ny > 1) r += (std::abs(state.u.y[i]) + cs) / g.h[1];
        if (g.nz > 1) r += (std::abs(state.u.z[i]) + cs) / g.h[2];
        rate = std::max(rate, r);
    }
    return rate;
}

int vacuum_burgers_step(Vec3Field& u, const Mask& mask, const Grid& grid, double dt,
                        double alpha, Sample boundary) {
    if (dt < 0.0) throw std::invalid_argument("vacuum_burgers_step: negative dt");
    if (dt == 0.0) return 0;
    const double decay = std::exp(-alpha * dt);
    const double reach = alpha == 0.0 ? dt : std::expm1(alpha * dt) / alpha;
    const Vec3Field old = u;
    std::atomic<int> failures{0};
    std::size_t idx = 0;
    std::vector<std::size_t> active;
    active.reserve(grid.cells());
    std::vector<Vec3> centers;
    centers.reserve(grid.cells());
    for (int kz = 0; kz < grid.nz; ++kz)
        for (int jy = 0; jy < grid.ny; ++jy)
            for (int ix = 0; ix < grid.nx; ++ix, ++idx)
                if (mask[idx]) {
                    active.push_back(idx);
                    centers.push_back(grid.center(ix, jy, kz));
                }
    parallel_for(active.size(), [&](std::size_t begin, std::size_t end) {
        int stalled = 0;
        for (std::size_t a = begin; a < end; ++a) {
            const std::size_t i = active[a];
            const Vec3 x = centers[a];
            Vec3 z{old.x[i], old.y[i], old.z[i]};
            bool converged = false;
            for (int it = 0; it < 50; ++it) {
                const Vec3 foot{x[0] - reach * z[0], x[1] - reach * z[1],
                                x[2] - reach * z[2]};
                const Vec3 next{decay * sample_field(grid, old.x, foot, boundary),
                                decay * sample_field(grid, old.y, foot, boundary),
                                decay * sample_field(grid, old.z, foot, boundary)};
                const double moved = std::abs(next[0] - z[0]) + std::abs(next[1] - z[1]) +
                                     std::abs(next[2] - z[2]);
                const double scale = 1.0 + std::abs(z[0]) + std::abs(z[1]) +
                                     std::abs(z[2]);
                z = next;
                if (moved <= 1e-13 * scale) {
                    converged = true;
                    break;
                }
            }
            u.x[i] = z[0];
            u.y[i] = z[1];
            u.z[i] = z[2];
            if (!converged) ++stalled;
        }
        if (stalled > 0) failures.fetch_add(stalled);
    });
    return failures.load();
}

HydroStatus hydro_step(FluidState& state, const std::vector<Vec4>* source, double dt,
                       double cfl_limit, double damping_alpha) {
    HydroStatus status;
    if (dt <= 0.0) throw std::invalid_argument("hydro_step: dt must be positive");
    if (!(cfl_limit > 0.0 && cfl_limit <= 1.0))
        throw std::invalid_argument("hydro_step: cfl limit must lie in (0, 1]");
    const Grid& g = state.grid;
    if (source && source->size() != g.cells())
        throw std::invalid_argument("hydro_step: source size mismatch");

    const double rate = hydro_wave_rate(state);
    if (rate > 0.0 && dt * rate > cfl_limit * (1.0 + 1e-12)) {
        status.accepted = false;
        status.required_dt = cfl_limit / rate;
        return status;
    }

    const Field rho_old = state.rho;
    const Field w_old = state.w;
    const Vec3Field u_old = state.u;
    const double gamma = state.gamma;
    const double root_gamma = std::sqrt(gamma);
    const double pressure_coef = 2.0 * gamma / (gamma - 1.0);
    const double inv_kappa = 1.0 / kappa_coeff(gamma);
    const Sample mode = state.boundary;
    const double decay = damping_alpha > 0.0 ? std::exp(-damping_alpha * dt) : 1.0;

    const Field* ux_old[3] = {&u_old.x, &u_old.y, &u_old.z};
    Field* ux_new[3] = {&state.u.x, &state.u.y, &state.u.z};

    std::vector<double> clipped(1, 0.0);
    std::size_t flat = 0;
    for (int kz = 0; kz < g.nz; ++kz)
        for (int jy = 0; jy < g.ny; ++jy)
            for (int ix = 0; ix < g.nx; ++ix, ++flat) {
                const int pos[3] = {ix, jy, kz};
                // conservative mass update with local Lax-Friedrichs fluxes
                double div_flux = 0.0;
                for (int axis = 0; axis < 3; ++axis) {
                    if (axis_extent(g, axis) == 1) continue;
                    const Field& ua = *ux_old[axis];
                    double face_flux[2];
                    for (int side = 0; side < 2; ++side) {
                        const int shift = side == 0 ? -1 : 1;
                        const std::size_t nb =
                            neighbor(g, mode, flat, pos[axis], axis, shift);
                        std::size_t left = side == 0 ? nb : flat;
                        std::size_t right = side == 0 ? flat : nb;
                        const double al = std::abs(ua[left]) + root_gamma * w_old[left];
                        const double ar = std::abs(ua[right]) + root_gamma * w_old[right];
                        const double a = std::max(al, ar);
                        face_flux[side] =
                            0.5 * (rho_old[left] * ua[left] + rho_old[right] * ua[right]) -
                            0.5 * a * (rho_old[right] - rho_old[left]);
                    }
                    div_flux += (face_flux[1] - face_flux[0]) / g.h[axis];
                }
                double rho_new = rho_old[flat] - dt * div_flux;
                if (rho_new < 0.0) {
                    clipped[0] += -rho_new * g.cell_volume();
                    rho_new = 0.0;
                }
                state.rho[flat] = rho_new;

                if (state.vacuum[flat]) continue;  // velocity handled separately

                // quasilinear velocity update with Rusanov dissipation
                double unew[3] = {u_old.x[flat], u_old.y[flat], u_old.z[flat]};
                for (int axis = 0; axis < 3; ++axis) {
                    if (axis_extent(g, axis) == 1) continue;
                    const std::size_t plus = neighbor(g, mode, flat, pos[axis], axis, 1);
                    const std::size_t minus =
                        neighbor(g, mode, flat, pos[axis], axis, -1);
                    const double inv2h = 0.5 / g.h[axis];
                    const double uaxis = (*ux_old[axis])[flat];
                    const double alpha_loc =
                        std::max(std::abs(uaxis) + root_gamma * w_old[flat],
                                 std::max(std::abs((*ux_old[axis])[plus]) +
                                              root_gamma * w_old[plus],
                                          std::abs((*ux_old[axis])[minus]) +
                                              root_gamma * w_old[minus]));
                    const double dw = (w_old[plus] - w_old[minus]) * inv2h;
                    for (int comp = 0; comp < 3; ++comp) {
                        const Field& uc = *ux_old[comp];
                        const double advect = uaxis * (uc[plus] - uc[minus]) * inv2h;
                        const double dissip = alpha_loc *
                                              (uc[plus] - 2.0 * uc[flat] + uc[minus]) *
                                              inv2h;
                        unew[comp] += dt * (dissip - advect);
                        if (comp == axis)
                            unew[comp] -= dt * pressure_coef * w_old[flat] * dw;
                    }
                }
                if (source) {
                    const Vec4& s = (*source)[flat];
                    unew[0] += dt * inv_kappa * s[1];
                    unew[1] += dt * inv_kappa * s[2];
                    unew[2] += dt * inv_kappa * s[3];
                }
                (*ux_new[0])[flat] = decay * unew[0];
                (*ux_new[1])[flat] = decay * unew[1];
                (*ux_new[2])[flat] = decay * unew[2];
            }
    status.clipped_mass = clipped[0];

    status.fixed_point_failures =
        vacuum_burgers_step(state.u, state.vacuum, g, dt, damping_alpha, mode);

    refresh_derived_fields(state);
    refresh_vacuum_mask(state);

    for (std::size_t i = 0; i < g.cells(); ++i)
        if (!std::isfinite(state.rho[i]) || !std::isfinite(state.u.x[i]) ||
            !std::isfinite(state.u.y[i]) || !std::isfinite(state.u.z[i])) {
            status.finite = false;
            break;
        }
    return status;
}

VacuumGeometry make_vacuum_geometry(const Grid& grid, const Vec3& center,
                                    double a0_radius, double b0_radius, double r0,
                                    const Field& rho0) {
    if (!(a0_radius > 0.0 && a0_radius < b0_radius && b0_radius <= r0))
        throw std::invalid_argument(
            "make_vacuum_geometry: radii must satisfy 0 < a0 < b0 <= r0");
    if (rho0.size() != grid.cells())
        throw std::invalid_argument("make_vacuum_geometry: density size mismatch");
    VacuumGeometry geo;
    geo.center = center;
    geo.a0_radius = a0_radius;
    geo.b0_radius = b0_radius;
    geo.r0 = r0;
    geo.a0_set = ball_mask_conservative(grid, center, a0_radius);
    geo.b0_set = ball_mask_conservative(grid, center, b0_radius);
    double m0 = 0.0;
    for (std::size_t i = 0; i < grid.cells(); ++i)
        if (geo.a0_set[i]) m0 += rho0[i] * grid.cell_volume();
    geo.m0 = m0;
    return geo;
}

FlowMap seed_boundary_tracers(const VacuumGeometry& geometry, const Grid& grid,
                              int per_boundary) {
    if (per_boundary < 1)
        throw std::invalid_argument("seed_boundary_tracers: need at least one tracer");
    FlowMap map;
    const bool one_dim = grid.dim == 1;
    for (int which = 0; which < 2; ++which) {
        const double r = which == 0 ? geometry.a0_radius : geometry.b0_radius;
        if (one_dim) {
            for (double sgn : {-1.0, 1.0}) {
                Tracer t;
                t.start = {geometry.center[0] + sgn * r, geometry.center[1],
                           geometry.center[2]};
                t.pos = t.start;
                t.tag = which;
                map.tracers.push_back(t);
            }
        } else {
            // Fibonacci-style spiral on the sphere: deterministic, even cover.
            const double golden = M_PI * (3.0 - std::sqrt(5.0));
            for (int i = 0; i < per_boundary; ++i) {
                const double z = 1.0 - 2.0 * (i + 0.5) / per_boundary;
                const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
                const double phi = golden * i;
                Tracer t;
                t.start = {geometry.center[0] + r * s * std::cos(phi),
                           geometry.center[1] + r * s * std::sin(phi),
                           geometry.center[2] + r * z};
                t.pos = t.start;
                t.tag = which;
                map.tracers.push_back(t);
            }
        }
    }
    return map;
}

void advance_flow_map(FlowMap& map, const Grid& grid, const Vec3Field& u, double dt,
                      Sample boundary) {
    for (Tracer& t : map.tracers) {
        if (t.frozen) continue;
        if (!grid.contains(t.pos)) {
            t.frozen = true;
            continue;
        }
        const Vec3 v1{sample_field(grid, u.x, t.pos, boundary),
                      sample_field(grid, u.y, t.pos, boundary),
                      sample_field(grid, u.z, t.pos, boundary)};
        const Vec3 mid{t.pos[0] + 0.5 * dt * v1[0], t.pos[1] + 0.5 * dt * v1[1],
                       t.pos[2] + 0.5 * dt * v1[2]};
        const Vec3 v2{sample_field(grid, u.x, mid, boundary),
                      sample_field(grid, u.y, mid, boundary),
                      sample_field(grid, u.z, mid, boundary)};
        t.pos = {t.pos[0] + dt * v2[0], t.pos[1] + dt * v2[1], t.pos[2] + dt * v2[2]};
    }
}

double max_tracer_drift(const FlowMap& map, int tag) {
    double drift = 0.0;
    for (const Tracer& t : map.tracers) {
        if (tag >= 0 && t.tag != tag) continue;
        const Vec3 d{t.pos[0] - t.start[0], t.pos[1] - t.start[1],
                     t.pos[2] - t.start[2]};
        drift = std::max(drift, norm(d));
    }
    return drift;
}

DriftReport vacuum_stationarity_check(const VacuumGeometry& geometry, const FlowMap& map,
                                      const Grid& grid) {
    (void)geometry;
    DriftReport report;
    report.inner_drift = max_tracer_drift(map, 0);
    report.outer_drift = max_tracer_drift(map, 1);
    report.cell_width = grid.min_h();
    report.pass = std::max(report.inner_drift, report.outer_drift) <= report.cell_width;
    return report;
}

double lagrangian_density(double rho0_at_foot, const std::vector<double>& divu_history,
                          double dt) {
    if (dt < 0.0) throw std::invalid_argument("lagrangian_density: negative dt");
    if (divu_history.size() < 2) return rho0_at_foot;
    double integral = 0.0;
    for (std::size_t i = 0; i + 1 < divu_history.size(); ++i)
        integral += 0.5 * dt * (divu_history[i] + divu_history[i + 1]);
    return rho0_at_foot * std::exp(-integral);
}

double total_mass(const FluidState& state) {
    double m = 0.0;
    for (double r : state.rho) m += r;
    return m * state.grid.cell_volume();
}

Vec3 total_momentum(const FluidState& state) {
    Vec3 p{0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < state.rho.size(); ++i) {
        p[0] += state.rho[i] * state.u.x[i];
        p[1] += state.rho[i] * state.u.y[i];
        p[2] += state.rho[i] * state.u.z[i];
    }
    const double vol = state.grid.cell_volume();
    return {p[0] * vol, p[1] * vol, p[2] * vol};
}

double max_velocity_gradient(const FluidState& state) {
    const Grid& g = state.grid;
    const Field* comps[3] = {&state.u.x, &state.u.y, &state.u.z};
    double grad = 0.0;
    for (int axis = 0; axis < 3; ++axis) {
        if (axis_extent(g, axis) == 1) continue;
        for (int comp = 0; comp < 3; ++comp) {
            const Field d = derivative(g, *comps[comp], axis, state.boundary);
            for (double v : d) grad = std::max(grad, std::abs(v));
        }
    }
    return grad;
}

}  // namespace rhlab
