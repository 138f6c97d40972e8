// Copyright (c) 2026 rhlab authors.
// SPDX-License-Identifier: MIT

#pragma once

#include <cstddef>
#include <vector>

#include "rhlab/grid.hpp"
#include "rhlab/linalg.hpp"

namespace rhlab {

// Fluid unknowns on a grid. rho is primary; w = rho^((gamma-1)/2) and
// pressure = rho^gamma are refreshed from it after every update. Cells are
// flagged vacuum when they and all face neighbors sit below the threshold.
struct FluidState {
    Grid grid;
    double gamma = 2.0;
    Sample boundary = Sample::clamp;
    Field rho;
    Field w;
    Vec3Field u;
    Field pressure;
    Mask vacuum;
    double vacuum_threshold = 0.0;
};

FluidState make_fluid_state(const Grid& grid, double gamma);

// Rebuilds w and pressure from rho (0 maps to 0 exactly).
void refresh_derived_fields(FluidState& state);

// Sets vacuum_threshold to 1e-12 * max rho when `from_current_rho`, then
// reflags: a cell is vacuum only if it and every face neighbor are below
// the threshold.
void refresh_vacuum_mask(FluidState& state, bool from_current_rho = false);

struct HydroStatus {
    bool accepted = true;
    double required_dt = 0.0;  // set when the step is rejected by CFL
    bool finite = true;        // false when the update produced NaN/Inf
    double clipped_mass = 0.0; // mass removed by clipping negative densities
    int fixed_point_failures = 0;  // vacuum cells whose foot iteration stalled
};

// Largest per-cell sum over active axes of (|u_axis| + sqrt(gamma) w)/h_axis;
// the reciprocal bounds the stable dt.
double hydro_wave_rate(const FluidState& state);

// One explicit step: conservative mass update with local Lax-Friedrichs
// fluxes, quasilinear velocity update with Rusanov dissipation and the
// pressure coupling (2 gamma/(gamma-1)) w grad w, the symmetrized source
// scaled by the inverse symmetrizer on fluid cells, and the pressureless
// semi-Lagrangian update on vacuum cells. `source` may be null; when given
// it holds one 4-vector per cell (component 0 is ignored: the mass equation
// is homogeneous). `damping_alpha` > 0 applies velocity damping -alpha u,
// exactly integrated on vacuum cells and by integrating factor on fluid
// cells.
HydroStatus hydro_step(FluidState& state, const std::vector<Vec4>* source, double dt,
                       double cfl_limit, double damping_alpha = 0.0);

// Pressureless velocity update restricted to masked cells:
// u(t+dt, x) = exp(-alpha dt) u(t, x0) with the foot x0 solved by fixed-point
// iteration (at most 50 sweeps); alpha = 0 reduces to the undamped form.
// Returns the number of masked cells whose iteration failed to converge.
int vacuum_burgers_step(Vec3Field& u, const Mask& mask, const Grid& grid, double dt,
                        double alpha, Sample boundary);

// Vacuum annulus bookkeeping: cell masks for the inner gas region and the
// outer ball, the enclosing radius r0, and the mass inside the inner region.
struct VacuumGeometry {
    Mask a0_set;
    Mask b0_set;
    Vec3 center{0.0, 0.0, 0.0};
    double a0_radius = 0.0;
    double b0_radius = 0.0;
    double r0 = 0.0;
    double m0 = 0.0;
};

VacuumGeometry make_vacuum_geometry(const Grid& grid, const Vec3& center,
                                    double a0_radius, double b0_radius, double r0,
                                    const Field& rho0);

// Passive markers advected with the flow; tag 0 marks the inner boundary,
// tag 1 the outer boundary, tag 2 user seeds.
struct Tracer {
    Vec3 start{0.0, 0.0, 0.0};
    Vec3 pos{0.0, 0.0, 0.0};
    bool frozen = false;
    int tag = 2;
};

struct FlowMap {
    std::vector<Tracer> tracers;
};

// Places `per_boundary` tracers on the inner and outer boundary spheres
// (their two endpoints in one dimension).
FlowMap seed_boundary_tracers(const VacuumGeometry& geometry, const Grid& grid,
                              int per_boundary);

// Midpoint Runge-Kutta tracer update; tracers that leave the domain are
// frozen in place and flagged.
void advance_flow_map(FlowMap& map, const Grid& grid, const Vec3Field& u, double dt,
                      Sample boundary);

// Largest |pos - start| over tracers with the given tag (-1 for all).
double max_tracer_drift(const FlowMap& map, int tag = -1);

struct DriftReport {
    double inner_drift = 0.0;
    double outer_drift = 0.0;
    double cell_width = 0.0;
    bool pass = false;
};

DriftReport vacuum_stationarity_check(const VacuumGeometry& geometry, const FlowMap& map,
                                      const Grid& grid);

// Density along a particle path: rho0 at the path's origin times
// exp(-integral of div u), with the history integrated by the trapezoid rule
// over uniform samples spaced `dt` apart.
double lagrangian_density(double rho0_at_foot, const std::vector<double>& divu_history,
                          double dt);

double total_mass(const FluidState& state);
Vec3 total_momentum(const FluidState& state);

// Largest absolute entry of the discrete velocity Jacobian over the grid.
double max_velocity_gradient(const FluidState& state);

}  // namespace rhlab
