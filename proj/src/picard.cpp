// Copyright (c) 2026 rhlab authors.
// SPDX-License-Identifier: MIT

#include "rhlab/picard.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rhlab/parallel.hpp"
#include "rhlab/symhyp.hpp"

namespace rhlab {

namespace {

std::size_t wrap(int q, int n) { return static_cast<std::size_t>((q % n + n) % n); }

// One explicit step of the linear symmetric system with frozen coefficient
// fields (wf, uf) and frozen source: centered derivatives plus Rusanov
// dissipation at the frozen wave speeds. One-dimensional periodic form; the
// iteration experiment lives on a periodic line.
void linear_fluid_step(const Grid& g, double gamma, const Field& wf, const Field& uf,
                       const std::vector<double>& source_u, const Field& w_in,
                       const Field& u_in, Field& w_out, Field& u_out, double dt) {
    const int n = g.nx;
    const double inv2h = 0.5 / g.h[0];
    const double half_gm1 = 0.5 * (gamma - 1.0);
    const double pressure_coef = 2.0 * gamma / (gamma - 1.0);
    const double root_gamma = std::sqrt(gamma);
    const double inv_kappa = 1.0 / kappa_coeff(gamma);
    for (int i = 0; i < n; ++i) {
        const std::size_t ip = wrap(i + 1, n);
        const std::size_t im = wrap(i - 1, n);
        const double alpha =
            std::max({std::abs(uf[i]) + root_gamma * wf[i],
                      std::abs(uf[ip]) + root_gamma * wf[ip],
                      std::abs(uf[im]) + root_gamma * wf[im]});
        const double dw = (w_in[ip] - w_in[im]) * inv2h;
        const double du = (u_in[ip] - u_in[im]) * inv2h;
        const double lap_w = (w_in[ip] - 2.0 * w_in[i] + w_in[im]) * inv2h;
        const double lap_u = (u_in[ip] - 2.0 * u_in[i] + u_in[im]) * inv2h;
        w_out[i] = w_in[i] + dt * (-uf[i] * dw - half_gm1 * wf[i] * du + alpha * lap_w);
        u_out[i] = u_in[i] + dt * (-uf[i] * du - pressure_coef * wf[i] * dw +
                                   alpha * lap_u + inv_kappa * source_u[i]);
    }
}

}  // namespace

Trajectory linearized_solve(const PicardContext& ctx, const Trajectory& previous,
                            const Field& w0, const Vec3Field& u0,
                            const RadiationField& i0) {
    const Grid& g = ctx.grid;
    if (g.dim != 1 || g.ny != 1 || g.nz != 1)
        throw std::invalid_argument("linearized_solve: expects a one-dimensional grid");
    if (previous.samples() < 2)
        throw std::invalid_argument("linearized_solve: previous trajectory too short");
    if (w0.size() != g.cells() || u0.size() != g.cells())
        throw std::invalid_argument("linearized_solve: initial data size mismatch");
    const std::size_t steps = previous.samples() - 1;
    const double dt = previous.times[1] - previous.times[0];
    const double root_gamma = std::sqrt(ctx.gamma);
    for (std::size_t s = 0; s < previous.samples(); ++s) {
        double rate = 0.0;
        for (std::size_t i = 0; i < g.cells(); ++i) {
            const double wv = previous.w[s][i];
            const double uv = previous.u[s].x[i];
            if (!std::isfinite(wv) || !std::isfinite(uv))
                throw std::invalid_argument("linearized_solve: non-finite frozen field");
            rate = std::max(rate, (std::abs(uv) + root_gamma * wv) / g.h[0]);
        }
        if (dt * rate > 1.0)
            throw std::runtime_error(
                "linearized_solve: step rejected, frozen wave speeds exceed the "
                "stability bound");
    }

    Trajectory out;
    out.times = previous.times;
    out.w.reserve(steps + 1);
    out.u.reserve(steps + 1);
    out.radiation.reserve(steps + 1);
    out.w.push_back(w0);
    out.u.push_back(u0);
    out.radiation.push_back(i0);

    TransportOptions topt;
    topt.backend = TransportBackend::characteristic;
    topt.boundary = RadiationBoundary::periodic;
    topt.implicit_scattering_loss = ctx.implicit_scattering_loss;

    std::vector<double> source_u(g.cells(), 0.0);
    std::vector<double> buf;

    for (std::size_t s = 0; s < steps; ++s) {
        const Field& wf = previous.w[s];
        const Vec3Field& uf_prev = previous.u[s];
        const RadiationField& rad_prev = previous.radiation[s];

        for (std::size_t cell = 0; cell < g.cells(); ++cell) {
            const CellIntensity view = gather_cell(rad_prev, cell, buf);
            const Vec4 src = radiation_source_g(view, wf[cell], ctx.quad, ctx.freq,
                                                ctx.absorption, ctx.bbar, ctx.c,
                                                ctx.gamma);
            source_u[cell] = src[1];
        }

        RadiationField rad = out.radiation.back();
        transport_step(rad, g, wf, ctx.quad, ctx.freq, ctx.absorption, ctx.bbar,
                       ctx.scattering, ctx.c, ctx.gamma, dt, topt);

        Field w_new(g.cells()), u_new(g.cells());
        linear_fluid_step(g, ctx.gamma, wf, uf_prev.x, source_u, out.w.back(),
                          out.u.back().x, w_new, u_new, dt);

        Vec3Field u_next = make_vec3_field(g.cells());
        u_next.x = std::move(u_new);
        out.w.push_back(std::move(w_new));
        out.u.push_back(std::move(u_next));
        out.radiation.push_back(std::move(rad));
    }
    return out;
}

double trajectory_fluid_distance(const Grid& grid, const Trajectory& a,
                                 const Trajectory& b) {
    if (a.samples() != b.samples())
        throw std::invalid_argument("trajectory_fluid_distance: sample mismatch");
    double dist = 0.0;
    Field dw(grid.cells());
    Vec3Field du = make_vec3_field(grid.cells());
    for (std::size_t s = 0; s < a.samples(); ++s) {
        for (std::size_t i = 0; i < grid.cells(); ++i) {
            dw[i] = a.w[s][i] - b.w[s][i];
            du.x[i] = a.u[s].x[i] - b.u[s].x[i];
            du.y[i] = a.u[s].y[i] - b.u[s].y[i];
            du.z[i] = a.u[s].z[i] - b.u[s].z[i];
        }
        dist = std::max(dist, l2_norm(grid, dw, du));
    }
    return dist;
}

double trajectory_intensity_distance(const Grid& grid, const AngularQuadrature& quad,
                                     const FrequencyGrid& freq, const Trajectory& a,
                                     const Trajectory& b) {
    if (a.samples() != b.samples())
        throw std::invalid_argument("trajectory_intensity_distance: sample mismatch");
    const std::size_t cells = grid.cells();
    const double vol = grid.cell_volume();
    double total = 0.0;
    for (std::size_t gi = 0; gi < freq.size(); ++gi)
        for (std::size_t k = 0; k < quad.size(); ++k) {
            double worst = 0.0;
            for (std::size_t s = 0; s < a.samples(); ++s) {
                const double* pa = a.radiation[s].slice(gi, k);
                const double* pb = b.radiation[s].slice(gi, k);
                double acc = 0.0;
                for (std::size_t i = 0; i < cells; ++i) {
                    const double d = pa[i] - pb[i];
                    acc += d * d;
                }
                worst = std::max(worst, acc * vol);
            }
            total += freq.weight[gi] * quad.weight[k] * worst;
        }
    return std::sqrt(total);
}

IterationTrace picard_iterate(const PicardContext& ctx, const Field& w0_raw,
                              const Vec3Field& u0_raw, const RadiationField& i0_raw,
                              const MollifierConfig& mollifier, int k_max, double dt,
                              int steps, Trajectory* final_out) {
    const Grid& g = ctx.grid;
    if (k_max < 1) throw std::invalid_argument("picard_iterate: k_max must be >= 1");
    if (steps < 1 || steps > 512)
        throw std::invalid_argument("picard_iterate: steps must lie in [1, 512]");
    if (dt <= 0.0) throw std::invalid_argument("picard_iterate: dt must be positive");

    IterationTrace trace;

    auto mollify_level = [&](int level, Field& w, Vec3Field& u, RadiationField& rad,
                             bool& applied) {
        const double eps = mollifier.epsilon0 * std::ldexp(1.0, -level);
        MollifyResult mw = mollify(g, w0_raw, eps, Sample::periodic);
        w = std::move(mw.field);
        applied = mw.applied;
        u = make_vec3_field(g.cells());
        u.x = mollify(g, u0_raw.x, eps, Sample::periodic).field;
        u.y = mollify(g, u0_raw.y, eps, Sample::periodic).field;
        u.z = mollify(g, u0_raw.z, eps, Sample::periodic).field;
        rad = i0_raw;
        Field slice_in(g.cells());
        for (std::size_t gi = 0; gi < ctx.freq.size(); ++gi)
            for (std::size_t k = 0; k < ctx.quad.size(); ++k) {
                const double* src = i0_raw.slice(gi, k);
                std::copy(src, src + g.cells(), slice_in.begin());
                Field smoothed = mollify(g, slice_in, eps, Sample::periodic).field;
                std::copy(smoothed.begin(), smoothed.end(), rad.slice(gi, k));
            }
    };

    Field w_data;
    Vec3Field u_data;
    RadiationField rad_data;
    bool applied0 = false;
    mollify_level(0, w_data, u_data, rad_data, applied0);

    // zeroth iterate: level-0 data frozen in time
    Trajectory current;
    current.times.resize(steps + 1);
    for (int s = 0; s <= steps; ++s) current.times[s] = s * dt;
    current.w.assign(steps + 1, w_data);
    current.u.assign(steps + 1, u_data);
    current.radiation.assign(steps + 1, rad_data);

    Field w_prev_data = w_data;
    Vec3Field u_prev_data = u_data;

    double prev_total = -1.0;
    int growth_streak = 0;

    for (int k = 0; k < k_max; ++k) {
        Field w_next;
        Vec3Field u_next;
        RadiationField rad_next;
        bool applied = false;
        mollify_level(k + 1, w_next, u_next, rad_next, applied);

        Trajectory next = linearized_solve(ctx, current, w_next, u_next, rad_next);

        IterationRecord rec;
        rec.k = k;
        rec.mollifier_applied = applied;
        {
            Field dw(g.cells());
            Vec3Field du = make_vec3_field(g.cells());
            for (std::size_t i = 0; i < g.cells(); ++i) {
                dw[i] = w_next[i] - w_prev_data[i];
                du.x[i] = u_next.x[i] - u_prev_data.x[i];
                du.y[i] = u_next.y[i] - u_prev_data.y[i];
                du.z[i] = u_next.z[i] - u_prev_data.z[i];
            }
            rec.data_diff = l2_norm(g, dw, du);
        }
        rec.diff_u = trajectory_fluid_distance(g, next, current);
        rec.diff_i = trajectory_intensity_distance(g, ctx.quad, ctx.freq, next, current);
        for (std::size_t s = 0; s < next.samples(); ++s)
            rec.norm_s = std::max(
                rec.norm_s,
                sobolev_norm(g, next.w[s], next.u[s], trace.sobolev_order,
                             Sample::periodic));
        const double total = rec.diff_u + rec.diff_i;
        if (prev_total > 0.0) rec.ratio = total / prev_total;
        if (prev_total > 0.0 && total > prev_total) {
            if (++growth_streak >= 3) trace.contraction_failure = true;
        } else {
            growth_streak = 0;
        }
        prev_total = total;
        trace.records.push_back(rec);

        current = std::move(next);
        w_prev_data = std::move(w_next);
        u_prev_data = std::move(u_next);
    }

    const std::size_t half = trace.records.size() / 2;
    for (std::size_t i = half; i < trace.records.size(); ++i)
        trace.max_ratio_last_half =
            std::max(trace.max_ratio_last_half, trace.records[i].ratio);

    if (final_out) *final_out = std::move(current);
    return trace;
}

}  // namespace rhlab
