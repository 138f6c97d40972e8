// Copyright (c) 2026 rhlab authors.
// SPDX-License-Identifier: MIT

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rhlab/quadrature.hpp"

namespace rhlab {

// Reference blackbody-shaped spectrum bbar(v) = b * v^3 / (exp(v / v_ref) - 1),
// extended by its limit 0 at v = 0.
struct PlanckSpectrum {
    double b = 1.0;
    double v_ref = 1.0;
    double operator()(double v) const;
};

// Frequency-dependent absorption. ka is the full coefficient, kbar the
// per-density one; both vanish identically at w = 0 (vacuum) by definition.
// w is the sound-speed-like variable, w = rho^((gamma-1)/2).
struct AbsorptionModel {
    std::string name;
    std::function<double(double v, double w)> ka;
    std::function<double(double v, double w)> kbar;
};

// Temperature-broadened line absorption centered at v0:
//   ka(v, w)   = d1 sqrt(R) w^((3-gamma)/(gamma-1)) exp(-(d2 sqrt(R)/w) q^2)
//   kbar(v, w) = d1 sqrt(R) (1/w) exp(-(d2 sqrt(R)/w) q^2),  q = (v - v0)/v0
struct LineAbsorptionParams {
    double d1 = 1.0;
    double d2 = 1.0;
    double gas_constant = 1.0;
    double v0 = 1.0;
    double gamma = 2.0;
};
AbsorptionModel make_line_absorption(const LineAbsorptionParams& p);
AbsorptionModel make_zero_absorption();
// kbar identically equal to `value` (does not vanish with the density).
AbsorptionModel make_constant_kbar(double value, double gamma);

// Emission source and absorption opacity tied to the reference spectrum:
//   S       = ka * bbar(v) * (1 + c^2 I / (2 h v^3))
//   sigma_a = ka * (1 + c^2 bbar(v) / (2 h v^3))
// so that S - sigma_a * I == -ka * (I - bbar(v)).
double emission_source_s(double v, double ka, double intensity, double bbar_v, double c,
                         double h_planck);
double absorption_sigma_a(double v, double ka, double bbar_v, double c, double h_planck);

// Frequency-redistribution scattering. The stored functions are per-density:
// sigma_s = rho * in(v_from, v_to, mu) for scattering into the beam and
// sigma_s' = rho * out(v_from, v_to, mu) for scattering out of it.
struct ScatteringKernel {
    bool enabled = false;
    std::string name;
    std::function<double(double v_from, double v_to, double mu)> in;
    std::function<double(double v_from, double v_to, double mu)> out;
};
ScatteringKernel make_no_scattering();
// Isotropic separable kernel sigma0 * g(v_from) * g(v_to) with
// g(v) = max(0, 1 - ((v - v_center)/width)^2)^2; the same function is used for
// in- and out-scattering, so the kernel is symmetric under beam exchange.
ScatteringKernel make_isotropic_kernel(double sigma0, double v_center, double width);

// Intensity samples of one spatial cell, indexed [group * ordinates + ordinate].
struct CellIntensity {
    const double* data = nullptr;
    int groups = 0;
    int ordinates = 0;
    double at(int g, int k) const { return data[static_cast<std::size_t>(g) * ordinates + k]; }
};

// Full collision term at one (group, ordinate) of a cell:
//   S - sigma_a I + integral of (v/v') sigma_s I' - sigma_s' I over (v', O').
// rho scales the scattering kernels; ka carries its own density dependence.
double collision_ar(const CellIntensity& cell, int g, int k, double rho, double w,
                    const AngularQuadrature& quad, const FrequencyGrid& freq,
                    const AbsorptionModel& absorption, const PlanckSpectrum& bbar, double c,
                    double h_planck, const ScatteringKernel& scattering);

// Structural report for an absorption model: measured norm constants of the
// coefficient and its per-density form over sampled fields, a divided-difference
// Lipschitz estimate, kernel finiteness, and the vanishing-with-density flag.
struct StructuralCheck {
    std::string label;
    double measured = 0.0;
    bool pass = false;
};
struct StructuralReport {
    std::vector<StructuralCheck> checks;
    bool all_pass() const;
};
StructuralReport validate_absorption_structure(const AbsorptionModel& model, double gamma,
                                               int sobolev_order,
                                               const ScatteringKernel& scattering,
                                               unsigned seed = 20260819u);

}  // namespace rhlab
