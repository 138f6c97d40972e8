// Copyright (c) 2026 rhlab authors.
// SPDX-License-Identifier: MIT

#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "rhlab/coefficients.hpp"
#include "rhlab/grid.hpp"
#include "rhlab/quadrature.hpp"

namespace rhlab {

// Specific intensity samples for every frequency group, ordinate, and cell.
// Storage is ray-major: the spatial slice of one (group, ordinate) pair is
// contiguous, which is the access pattern of the streaming update.
struct RadiationField {
    std::size_t groups = 0;
    std::size_t ordinates = 0;
    std::size_t cells = 0;
    std::vector<double> data;

    double& at(std::size_t g, std::size_t k, std::size_t cell) {
        return data[(g * ordinates + k) * cells + cell];
    }
    double at(std::size_t g, std::size_t k, std::size_t cell) const {
        return data[(g * ordinates + k) * cells + cell];
    }
    double* slice(std::size_t g, std::size_t k) {
        return data.data() + (g * ordinates + k) * cells;
    }
    const double* slice(std::size_t g, std::size_t k) const {
        return data.data() + (g * ordinates + k) * cells;
    }
};

RadiationField make_radiation_field(std::size_t groups, std::size_t ordinates,
                                    std::size_t cells, double value = 0.0);

// Field in radiative equilibrium: I = Bbar(v_g) for every ordinate and cell.
RadiationField make_equilibrium_field(std::size_t cells, const FrequencyGrid& freq,
                                      const AngularQuadrature& quad,
                                      const PlanckSpectrum& bbar);

// Copies one cell's (group, ordinate) block into `buf` and returns a view.
CellIntensity gather_cell(const RadiationField& field, std::size_t cell,
                          std::vector<double>& buf);

// Exact solution along one photon characteristic over a duration t:
// Bbar + (I_foot - Bbar) * exp(-integral of c*ka over the path), with the
// path integral evaluated by a composite Gauss rule (`segments` panels of
// order `gauss_order`). `ka_along_path` maps elapsed time in [0, t] to the
// local absorption coefficient.
double integrate_along_ray(double i0_at_foot, double bbar_v,
                           const std::function<double(double)>& ka_along_path, double t,
                           double c, int segments = 2, int gauss_order = 3);

enum class TransportBackend { characteristic, sweep };
enum class RadiationBoundary { equilibrium_inflow, periodic };

struct TransportOptions {
    TransportBackend backend = TransportBackend::characteristic;
    RadiationBoundary boundary = RadiationBoundary::equilibrium_inflow;
    // Composite-Gauss resolution of the absorption path integral.
    int path_segments = 2;
    int path_gauss_order = 3;
    // Treat the scattering loss term implicitly (used by the linearized
    // iteration); the gain term is always explicit from the buffered state.
    bool implicit_scattering_loss = false;
};

struct TransportStatus {
    bool accepted = true;
    double required_dt = 0.0;  // set when a sweep step is rejected by CFL
};

// Largest stable step for the given backend. The characteristic backend is
// unconditionally stable and returns +infinity; the sweep backend returns
// the upwind bound min over ordinates of 1 / (c * sum_a |Omega_a| / h_a),
// counting only axes with more than one cell.
double transport_dt_limit(const Grid& grid, const AngularQuadrature& quad, double c,
                          TransportBackend backend);

// Advances every (group, ordinate) intensity by one step of
// (1/c) dI/dt + Omega . grad I = -ka (I - Bbar) [+ scattering exchange].
// The density enters through the frozen w field; scattering uses
// rho = w^(2/(gamma-1)). Streaming and absorption are exact along
// characteristics in the characteristic backend; the sweep backend is
// first-order upwind with implicit absorption and demands c*dt within the
// upwind stability bound (violations reject the step and report the
// largest admissible dt).
TransportStatus transport_step(RadiationField& field, const Grid& grid,
                               const Field& w_field, const AngularQuadrature& quad,
                               const FrequencyGrid& freq,
                               const AbsorptionModel& absorption,
                               const PlanckSpectrum& bbar,
                               const ScatteringKernel& scattering, double c,
                               double gamma, double dt, const TransportOptions& opt);

// First and second angular moments of the intensity.
struct RadiationMoments {
    Vec3Field flux;                 // F_r components
    std::array<Field, 6> pressure;  // P_r upper triangle: xx, xy, xz, yy, yz, zz
    Field angle_integrated;         // sum of w_g w_k I (equals c * trace P_r)
};

RadiationMoments radiation_moments(const RadiationField& field,
                                   const AngularQuadrature& quad,
                                   const FrequencyGrid& freq, double c);

// Largest |I - Bbar(v)| over all groups and ordinates, restricted to cells
// where `mask` is nonzero (all cells when mask is null).
double max_equilibrium_deviation(const RadiationField& field, const FrequencyGrid& freq,
                                 const PlanckSpectrum& bbar, const Mask* mask = nullptr);

}  // namespace rhlab
