// Copyright (c) 2026 rhlab authors.
// SPDX-License-Identifier: MIT

#pragma once

#include "rhlab/coefficients.hpp"
#include "rhlab/grid.hpp"
#include "rhlab/linalg.hpp"
#include "rhlab/quadrature.hpp"

namespace rhlab {

// Variable transform between density and the sound-speed-like variable
// w = rho^((gamma-1)/2). Valid for 1 < gamma <= 3 and nonnegative inputs.
double w_from_rho(double rho, double gamma);
double rho_from_w(double w, double gamma);

// Isentropic pressure p_m = rho^gamma.
double pressure_from_rho(double rho, double gamma);

// kappa = (gamma-1)^2 / (4 gamma), the velocity-block weight of the
// symmetrizer. Lies in (0, 1/3] on gamma in (1, 3].
double kappa_coeff(double gamma);

// Constant symmetrizer diag(1, kappa, kappa, kappa).
Mat4 assemble_a0(double gamma);

// Flux matrix along `axis` (0..2) at state U = (w, u1, u2, u3):
// top-left u_axis, first row/column carry ((gamma-1)/2) w in the axis slot,
// lower-right block kappa * u_axis * I3.
Mat4 assemble_aj(const Vec4& U, double gamma, int axis);

// Characteristic speeds of A0^{-1} A_axis, ascending:
// { u_axis - sqrt(gamma) w, u_axis, u_axis, u_axis + sqrt(gamma) w }.
std::array<double, 4> characteristic_speeds(const Vec4& U, double gamma, int axis);

// Radiation momentum source at one cell: component 0 is zero, components
// 1..3 are (gamma-1)^2/(4 c gamma) * sum_{g,k} w_g w_k kbar(v_g, w) *
// (I_{gk} - Bbar(v_g)) * Omega_{k,axis}.
Vec4 radiation_source_g(const CellIntensity& cell, double w,
                        const AngularQuadrature& quad, const FrequencyGrid& freq,
                        const AbsorptionModel& absorption, const PlanckSpectrum& bbar,
                        double c, double gamma);

// Per-density collision terms for the scattering-enabled system. `sbar` and
// `sigma_abar` are per-density emission and absorption as functions of
// frequency at the local state; the kernels are per-density as well.
struct GeneralCollision {
    std::function<double(double v)> sbar;
    std::function<double(double v)> sigma_abar;
    ScatteringKernel scattering;
};

// Builds the per-density collision bracket from the equilibrium absorption
// model: sbar - sigma_abar * I reduces to -kbar (I - Bbar).
GeneralCollision equilibrium_collision(const AbsorptionModel& absorption,
                                       const PlanckSpectrum& bbar, double w,
                                       const ScatteringKernel& scattering);

// Momentum source of the scattering-enabled form, carrying its leading minus:
// component 0 is zero, components 1..3 are
// -(gamma-1)^2/(4 c gamma) * sum_{g,k} w_g w_k [ sbar - sigma_abar I
//   + sum_{g',k'} w_g' w_k' ((v/v') sigma_s_in I' - sigma_s_out I) ] Omega_k.
Vec4 collision_source_f(const CellIntensity& cell, const AngularQuadrature& quad,
                        const FrequencyGrid& freq, const GeneralCollision& gc,
                        double c, double gamma);

}  // namespace rhlab
