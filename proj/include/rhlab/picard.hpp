// Copyright (c) 2026 rhlab authors.
// SPDX-License-Identifier: MIT

#pragma once

#include <vector>

#include "rhlab/coefficients.hpp"
#include "rhlab/fieldops.hpp"
#include "rhlab/grid.hpp"
#include "rhlab/quadrature.hpp"
#include "rhlab/transport.hpp"

namespace rhlab {

// Time-sampled history of one iterate: fluid variables and intensities at
// uniform steps, sample n at time n * dt.
struct Trajectory {
    std::vector<double> times;
    std::vector<Field> w;
    std::vector<Vec3Field> u;
    std::vector<RadiationField> radiation;

    std::size_t samples() const { return times.size(); }
};

// Shared discretization for the iteration experiment.
struct PicardContext {
    Grid grid;
    AngularQuadrature quad;
    FrequencyGrid freq;
    AbsorptionModel absorption;
    PlanckSpectrum bbar;
    ScatteringKernel scattering = make_no_scattering();
    double c = 1.0;
    double gamma = 2.0;
    // Move the scattering loss term to the implicit side of the intensity
    // update (the scattering-enabled variant of the linearized problem).
    bool implicit_scattering_loss = false;
};

struct MollifierConfig {
    double epsilon0 = 0.5;  // width at level 0; level k uses epsilon0 / 2^k
};

// Solves the linear problems with coefficients frozen on `previous`:
// the transport equation with the absorption of the previous fluid state,
// and the symmetric hyperbolic fluid system with matrices and radiation
// source evaluated on the previous iterate. Initial data are the (already
// mollified) fields for the next level. Steps and dt are those of
// `previous` (every sample aligned).
Trajectory linearized_solve(const PicardContext& ctx, const Trajectory& previous,
                            const Field& w0, const Vec3Field& u0,
                            const RadiationField& i0);

struct IterationRecord {
    int k = 0;
    double data_diff = 0.0;  // L2 distance between successive mollified data
    double diff_u = 0.0;     // largest-over-time L2 distance of fluid iterates
    double diff_i = 0.0;     // quadrature-weighted intensity distance
    double ratio = 0.0;      // total diff relative to the previous record
    double norm_s = 0.0;     // largest-over-time discrete H^s norm of (w, u)
    bool mollifier_applied = false;
};

struct IterationTrace {
    std::vector<IterationRecord> records;
    double max_ratio_last_half = 0.0;
    bool contraction_failure = false;  // differences grew 3 records in a row
    int sobolev_order = 3;
};

// Runs the full iteration: level-k data mollified at width epsilon0 / 2^k,
// each iterate solved against the previous one, differences and ratios
// recorded. The zeroth iterate is the level-0 data held constant in time.
IterationTrace picard_iterate(const PicardContext& ctx, const Field& w0_raw,
                              const Vec3Field& u0_raw, const RadiationField& i0_raw,
                              const MollifierConfig& mollifier, int k_max, double dt,
                              int steps, Trajectory* final_out = nullptr);

// Largest-over-time L2 distance between the fluid parts of two aligned
// trajectories.
double trajectory_fluid_distance(const Grid& grid, const Trajectory& a,
                                 const Trajectory& b);

// Quadrature-weighted intensity distance: per (group, ordinate) the largest
// L2-in-space distance over time enters a weighted square sum.
double trajectory_intensity_distance(const Grid& grid, const AngularQuadrature& quad,
                                     const FrequencyGrid& freq, const Trajectory& a,
                                     const Trajectory& b);

}  // namespace rhlab
