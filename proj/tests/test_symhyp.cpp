// Copyright (c) 2026 rhlab authors.
// SPDX-License-Identifier: MIT

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "rhlab/coefficients.hpp"
#include "rhlab/linalg.hpp"
#include "rhlab/quadrature.hpp"
#include "rhlab/symhyp.hpp"

using namespace rhlab;

TEST_CASE("density transform matches hand values") {
    CHECK(w_from_rho(4.0, 2.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(w_from_rho(4.0, 3.0) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(w_from_rho(0.0, 1.4) == 0.0);
    CHECK(rho_from_w(2.0, 2.0) == doctest::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("density transform round trips across exponents") {
    for (double gamma : {1.2, 1.4, 2.0, 3.0})
        for (double rho : {0.0, 0.3, 1.0, 7.5}) {
            const double w = w_from_rho(rho, gamma);
            CHECK(rho_from_w(w, gamma) == doctest::Approx(rho).epsilon(1e-12));
        }
}

TEST_CASE("density transform rejects out-of-range exponents and negative inputs") {
    CHECK_THROWS_AS(w_from_rho(1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(w_from_rho(1.0, 3.5), std::invalid_argument);
    CHECK_THROWS_AS(w_from_rho(-0.1, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(rho_from_w(-0.1, 2.0), std::invalid_argument);
}

TEST_CASE("isentropic pressure is the power law of density") {
    CHECK(pressure_from_rho(3.0, 2.0) == doctest::Approx(9.0).epsilon(1e-14));
    CHECK(pressure_from_rho(2.0, 3.0) == doctest::Approx(8.0).epsilon(1e-14));
    CHECK(pressure_from_rho(0.0, 1.4) == 0.0);
}

TEST_CASE("velocity-block weight matches hand values and stays in range") {
    CHECK(kappa_coeff(2.0) == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(kappa_coeff(3.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    for (double gamma = 1.01; gamma <= 3.0; gamma += 0.01) {
        const double kappa = kappa_coeff(gamma);
        CHECK(kappa > 0.0);
        CHECK(kappa <= 1.0 / 3.0 + 1e-15);
    }
}

TEST_CASE("symmetrizer is the diagonal weight matrix") {
    const double gamma = 1.7;
    const Mat4 a0 = assemble_a0(gamma);
    const double kappa = kappa_coeff(gamma);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            const double expected = (r != c) ? 0.0 : (r == 0 ? 1.0 : kappa);
            CHECK(a0[r * 4 + c] == doctest::Approx(expected).epsilon(1e-15));
        }
}

TEST_CASE("flux matrices are symmetric with the documented structure") {
    std::mt19937 rng(3u);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const double gamma = 1.1 + 1.9 * std::abs(unit(rng));
        const Vec4 state{std::abs(unit(rng)) + 0.1, unit(rng), unit(rng), unit(rng)};
        for (int axis = 0; axis < 3; ++axis) {
            const Mat4 a = assemble_aj(state, gamma, axis);
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c)
                    CHECK(a[r * 4 + c] == doctest::Approx(a[c * 4 + r]).epsilon(1e-14));
            CHECK(a[0] == doctest::Approx(state[1 + axis]).epsilon(1e-14));
            CHECK(a[0 * 4 + 1 + axis] ==
                  doctest::Approx(0.5 * (gamma - 1.0) * state[0]).epsilon(1e-14));
            const double kappa = kappa_coeff(gamma);
            for (int d = 1; d < 4; ++d)
                CHECK(a[d * 4 + d] ==
                      doctest::Approx(kappa * state[1 + axis]).epsilon(1e-14));
        }
    }
}

TEST_CASE("characteristic speeds are the acoustic fan in ascending order") {
    const Vec4 state{2.0, 1.0, -0.5, 0.25};
    const double gamma = 2.0;
    const auto speeds = characteristic_speeds(state, gamma, 0);
    const double sound = std::sqrt(gamma) * state[0];
    CHECK(speeds[0] == doctest::Approx(1.0 - sound).epsilon(1e-14));
    CHECK(speeds[1] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(speeds[2] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(speeds[3] == doctest::Approx(1.0 + sound).epsilon(1e-14));
    const auto along_y = characteristic_speeds(state, gamma, 1);
    CHECK(along_y[0] == doctest::Approx(-0.5 - sound).epsilon(1e-14));
    CHECK(along_y[3] == doctest::Approx(-0.5 + sound).epsilon(1e-14));
}

TEST_CASE("characteristic speeds agree with the symmetrized eigenproblem") {
    const Vec4 state{0.8, 0.4, 0.1, -0.3};
    const double gamma = 1.4;
    for (int axis = 0; axis < 3; ++axis) {
        const Mat4 a = assemble_aj(state, gamma, axis);
        const double kappa = kappa_coeff(gamma);
        // Similarity transform D^{-1/2} A D^{-1/2} shares eigenvalues with
        // A0^{-1} A for the diagonal symmetrizer D = A0.
        Mat4 scaled = a;
        const double inv_sqrt[4] = {1.0, 1.0 / std::sqrt(kappa), 1.0 / std::sqrt(kappa),
                                    1.0 / std::sqrt(kappa)};
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) scaled[r * 4 + c] *= inv_sqrt[r] * inv_sqrt[c];
        const auto eig = symmetric_eigenvalues_4(scaled);
        const auto speeds = characteristic_speeds(state, gamma, axis);
        for (int i = 0; i < 4; ++i)
            CHECK(eig[i] == doctest::Approx(speeds[i]).epsilon(1e-10));
    }
}

namespace {

struct BeamSetup {
    AngularQuadrature quad = build_angular_quadrature(2);
    FrequencyGrid freq = build_frequency_grid(2, 3.0);
    PlanckSpectrum bbar{1.0, 1.0};
    AbsorptionModel model;
    std::vector<double> values;

    BeamSetup() {
        LineAbsorptionParams p;
        p.gamma = 2.0;
        model = make_line_absorption(p);
        values.assign(freq.size() * quad.size(), 0.0);
        for (std::size_t g = 0; g < freq.size(); ++g)
            for (std::size_t k = 0; k < quad.size(); ++k)
                values[g * quad.size() + k] = bbar(freq.node[g]);
    }

    CellIntensity cell() const {
        return CellIntensity{values.data(), static_cast<int>(freq.size()),
                             static_cast<int>(quad.size())};
    }
};

}  // namespace

TEST_CASE("radiation momentum source vanishes at equilibrium") {
    BeamSetup s;
    const Vec4 g = radiation_source_g(s.cell(), 0.7, s.quad, s.freq, s.model, s.bbar, 2.0,
                                      2.0);
    for (int i = 0; i < 4; ++i) CHECK(g[i] == 0.0);
}

TEST_CASE("radiation momentum source vanishes in vacuum") {
    BeamSetup s;
    for (double& v : s.values) v += 0.4;
    const Vec4 g = radiation_source_g(s.cell(), 0.0, s.quad, s.freq, s.model, s.bbar, 2.0,
                                      2.0);
    for (int i = 0; i < 4; ++i) CHECK(g[i] == 0.0);
}

TEST_CASE("radiation momentum source matches the single-beam closed form") {
    BeamSetup s;
    const std::size_t g0 = 1, k0 = 3;
    const double delta = 0.35;
    s.values[g0 * s.quad.size() + k0] += delta;
    const double w = 0.6;
    const double c = 2.0;
    const double gamma = 2.0;
    const Vec4 g = radiation_source_g(s.cell(), w, s.quad, s.freq, s.model, s.bbar, c,
                                      gamma);
    const double coef = (gamma - 1.0) * (gamma - 1.0) / (4.0 * c * gamma);
    const double strength = coef * s.freq.weight[g0] * s.quad.weight[k0] *
                            s.model.kbar(s.freq.node[g0], w) * delta;
    CHECK(g[0] == 0.0);
    for (int axis = 0; axis < 3; ++axis)
        CHECK(g[1 + axis] ==
              doctest::Approx(strength * s.quad.omega[k0][axis]).epsilon(1e-13));
}

TEST_CASE("equilibrium collision bracket reduces to relaxation") {
    BeamSetup s;
    const double w = 0.55;
    const auto gc = equilibrium_collision(s.model, s.bbar, w, make_no_scattering());
    for (double v : {0.4, 1.0, 2.2}) {
        const double intensity = 1.3;
        const double bracket = gc.sbar(v) - gc.sigma_abar(v) * intensity;
        const double direct = -s.model.kbar(v, w) * (intensity - s.bbar(v));
        CHECK(bracket == doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("scattering-form momentum source equals the equilibrium form without "
          "scattering") {
    BeamSetup s;
    std::mt19937 rng(23u);
    std::uniform_real_distribution<double> unit(0.0, 2.0);
    for (int trial = 0; trial < 100; ++trial) {
        for (double& v : s.values) v = unit(rng);
        const double w = 0.05 + unit(rng);
        const double c = 0.5 + unit(rng);
        const double gamma = 1.1 + 0.9 * unit(rng);
        const auto gc = equilibrium_collision(s.model, s.bbar, w, make_no_scattering());
        const Vec4 f = collision_source_f(s.cell(), s.quad, s.freq, gc, c, gamma);
        const Vec4 g = radiation_source_g(s.cell(), w, s.quad, s.freq, s.model, s.bbar, c,
                                          gamma);
        for (int i = 0; i < 4; ++i)
            CHECK(f[i] == doctest::Approx(g[i]).epsilon(1e-12));
    }
}

TEST_CASE("isotropic intensity produces no net momentum source under scattering") {
    BeamSetup s;
    for (std::size_t g = 0; g < s.freq.size(); ++g)
        for (std::size_t k = 0; k < s.quad.size(); ++k)
            s.values[g * s.quad.size() + k] = 1.0 + 0.3 * static_cast<double>(g);
    const double w = 0.9;
    const auto kernel = make_isotropic_kernel(0.5, 1.5, 1.0);
    const auto gc = equilibrium_collision(s.model, s.bbar, w, kernel);
    const Vec4 f = collision_source_f(s.cell(), s.quad, s.freq, gc, 1.0, 2.0);
    const auto gc_off = equilibrium_collision(s.model, s.bbar, w, make_no_scattering());
    const Vec4 f_off = collision_source_f(s.cell(), s.quad, s.freq, gc_off, 1.0, 2.0);
    for (int i = 0; i < 4; ++i)
        CHECK(f[i] == doctest::Approx(f_off[i]).epsilon(1e-12));
}

TEST_CASE("symmetric eigenvalue solver recovers a known diagonalizable matrix") {
    // diag(3, 1) rotated by 45 degrees in the (0, 1) plane, padded with 5, 7.
    Mat4 m{2.0, 1.0, 0.0, 0.0, 1.0, 2.0, 0.0, 0.0,
           0.0, 0.0, 5.0, 0.0, 0.0, 0.0, 0.0, 7.0};
    const auto eig = symmetric_eigenvalues_4(m);
    CHECK(eig[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(eig[1] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(eig[2] == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(eig[3] == doctest::Approx(7.0).epsilon(1e-12));
}

TEST_CASE("general eigenvalue solver classifies rotation and strain") {
    const Mat3 strain{-1.0, 0.0, 0.0, 0.0, -2.0, 0.0, 0.0, 0.0, 0.5};
    const auto real_spec = eigenvalues_3(strain);
    CHECK_FALSE(real_spec.complex_pair);
    REQUIRE(real_spec.real_roots.size() == 3);
    CHECK(real_spec.real_roots[0] == doctest::Approx(-2.0).epsilon(1e-10));
    CHECK(real_spec.real_roots[2] == doctest::Approx(0.5).epsilon(1e-10));

    const Mat3 rotation{0.0, -1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    const auto rot_spec = eigenvalues_3(rotation);
    CHECK(rot_spec.complex_pair);
    CHECK(rot_spec.pair_real == doctest::Approx(0.0).epsilon(1e-12));
}
