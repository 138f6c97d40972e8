// Copyright (c) 2026 rhlab authors.
// SPDX-License-Identifier: MIT

#include <cmath>
#include <cstring>
#include <stdexcept>

#include "doctest.h"
#include "rhlab/fieldops.hpp"
#include "rhlab/grid.hpp"

using namespace rhlab;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrtTwoPi = 2.5066282746310002;

Field sine_field(const Grid& g, double wavenumber) {
    Field f(g.cells(), 0.0);
    for (int i = 0; i < g.nx; ++i) f[i] = std::sin(wavenumber * g.center(i, 0, 0)[0]);
    return f;
}

}  // namespace

TEST_CASE("l2 norm of a sine over one period matches the continuum value") {
    const Grid g = make_grid_1d(512, 0.0, 2.0 * kPi);
    const Field f = sine_field(g, 1.0);
    CHECK(l2_norm(g, f) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-10));
}

TEST_CASE("first-order graph norm of a sine matches sqrt(2 pi)") {
    const Grid g = make_grid_1d(512, 0.0, 2.0 * kPi);
    const Field f = sine_field(g, 1.0);
    CHECK(sobolev_norm(g, f, 1, Sample::periodic) ==
          doctest::Approx(kSqrtTwoPi).epsilon(1e-4));
}

TEST_CASE("third-order graph norm of a sine matches two sqrt(pi)") {
    const Grid g = make_grid_1d(512, 0.0, 2.0 * kPi);
    const Field f = sine_field(g, 1.0);
    CHECK(sobolev_norm(g, f, 3, Sample::periodic) ==
          doctest::Approx(2.0 * std::sqrt(kPi)).epsilon(1e-3));
}

TEST_CASE("graph norm at order zero equals the l2 norm") {
    const Grid g = make_grid_1d(128, -1.0, 3.0);
    Field f(g.cells());
    for (int i = 0; i < g.nx; ++i) f[i] = 0.3 + 0.1 * i;
    CHECK(sobolev_norm(g, f, 0, Sample::clamp) ==
          doctest::Approx(l2_norm(g, f)).epsilon(1e-14));
}

TEST_CASE("graph norms increase with the derivative order") {
    const Grid g = make_grid_1d(256, 0.0, 2.0 * kPi);
    const Field f = sine_field(g, 3.0);
    const double n0 = sobolev_norm(g, f, 0, Sample::periodic);
    const double n1 = sobolev_norm(g, f, 1, Sample::periodic);
    const double n3 = sobolev_norm(g, f, 3, Sample::periodic);
    CHECK(n1 > n0);
    CHECK(n3 > n1);
}

TEST_CASE("vector graph norm combines scalar and velocity components") {
    const Grid g = make_grid_1d(256, 0.0, 2.0 * kPi);
    const Field f = sine_field(g, 1.0);
    Vec3Field u = make_vec3_field(g.cells());
    const double scalar = sobolev_norm(g, f, 2, Sample::periodic);
    CHECK(sobolev_norm(g, f, u, 2, Sample::periodic) ==
          doctest::Approx(scalar).epsilon(1e-14));
    u.x = f;
    CHECK(sobolev_norm(g, f, u, 2, Sample::periodic) ==
          doctest::Approx(std::sqrt(2.0) * scalar).epsilon(1e-13));
}

TEST_CASE("graph norm rejects negative orders") {
    const Grid g = make_grid_1d(16, 0.0, 1.0);
    const Field f(g.cells(), 1.0);
    CHECK_THROWS_AS(sobolev_norm(g, f, -1, Sample::clamp), std::invalid_argument);
}

TEST_CASE("mollifier preserves constant fields exactly") {
    const Grid g = make_grid_1d(200, 0.0, 4.0);
    const Field f(g.cells(), 1.5);
    const auto result = mollify(g, f, 0.25, Sample::periodic);
    CHECK(result.applied);
    for (double v : result.field) CHECK(v == doctest::Approx(1.5).epsilon(1e-14));
}

TEST_CASE("mollifier below the resolvable width is a no-op") {
    const Grid g = make_grid_1d(100, 0.0, 1.0);
    const Field f = sine_field(g, 6.0);
    const auto result = mollify(g, f, 0.5 * g.h[0], Sample::periodic);
    CHECK_FALSE(result.applied);
    REQUIRE(result.field.size() == f.size());
    CHECK(std::memcmp(result.field.data(), f.data(), f.size() * sizeof(double)) == 0);
}

TEST_CASE("mollifier damps fine scales more than coarse scales") {
    const Grid g = make_grid_1d(512, 0.0, 2.0 * kPi);
    const Field coarse = sine_field(g, 1.0);
    const Field fine = sine_field(g, 32.0);
    const double eps = 0.5;
    const double coarse_ratio =
        l2_norm(g, mollify(g, coarse, eps, Sample::periodic).field) / l2_norm(g, coarse);
    const double fine_ratio =
        l2_norm(g, mollify(g, fine, eps, Sample::periodic).field) / l2_norm(g, fine);
    CHECK(fine_ratio < 0.1 * coarse_ratio);
    CHECK(coarse_ratio > 0.5);
}

TEST_CASE("mollifier preserves the periodic mean") {
    const Grid g = make_grid_1d(256, 0.0, 2.0 * kPi);
    Field f = sine_field(g, 5.0);
    for (double& v : f) v += 0.7;
    const auto result = mollify(g, f, 0.3, Sample::periodic);
    double before = 0.0, after = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        before += f[i];
        after += result.field[i];
    }
    CHECK(after == doctest::Approx(before).epsilon(1e-12));
}

TEST_CASE("mollifier treats nonpositive widths as flagged no-ops") {
    const Grid g = make_grid_1d(16, 0.0, 1.0);
    const Field f(g.cells(), 1.0);
    for (double eps : {0.0, -0.1}) {
        const MollifyResult result = mollify(g, f, eps, Sample::periodic);
        CHECK_FALSE(result.applied);
        CHECK(std::memcmp(result.field.data(), f.data(),
                          f.size() * sizeof(double)) == 0);
    }
}

TEST_CASE("multiscale profile starts from a pure sine at one octave") {
    const Grid g = make_grid_1d(128, 0.0, 2.0 * kPi);
    const Field f = multiscale_profile(g, 0.4, 1, 1.0);
    for (int i = 0; i < g.nx; ++i) {
        const double x = g.center(i, 0, 0)[0];
        CHECK(f[i] == doctest::Approx(0.4 * std::sin(x)).epsilon(1e-14));
    }
}

TEST_CASE("multiscale profile sums halved octaves with unit phase steps") {
    const Grid g = make_grid_1d(64, 0.0, 2.0 * kPi);
    const Field f = multiscale_profile(g, 1.0, 3, 1.0);
    for (int i = 0; i < g.nx; ++i) {
        const double x = g.center(i, 0, 0)[0];
        const double expected =
            std::sin(x) + 0.5 * std::sin(2.0 * x + 1.0) + 0.25 * std::sin(4.0 * x + 2.0);
        CHECK(f[i] == doctest::Approx(expected).epsilon(1e-13));
    }
}

TEST_CASE("multiscale profile is deterministic") {
    const Grid g = make_grid_1d(1024, 0.0, 2.0 * kPi);
    const Field a = multiscale_profile(g, 0.02, 7, 1.0);
    const Field b = multiscale_profile(g, 0.02, 7, 1.0);
    REQUIRE(a.size() == b.size());
    CHECK(std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0);
}

TEST_CASE("derivative of a sine under periodic sampling approximates the cosine") {
    const Grid g = make_grid_1d(512, 0.0, 2.0 * kPi);
    const Field f = sine_field(g, 1.0);
    const Field df = derivative(g, f, 0, Sample::periodic);
    double worst = 0.0;
    for (int i = 0; i < g.nx; ++i) {
        const double x = g.center(i, 0, 0)[0];
        worst = std::max(worst, std::abs(df[i] - std::cos(x)));
    }
    CHECK(worst < 1e-4);
}

TEST_CASE("divergence of a linear inflow field is constant") {
    const Grid g = make_grid_3d(8, 8, 8, {-1.0, -1.0, -1.0}, {1.0, 1.0, 1.0});
    Vec3Field u = make_vec3_field(g.cells());
    for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const Vec3 p = g.center(i, j, k);
                const std::size_t c = g.index(i, j, k);
                u.x[c] = -p[0];
                u.y[c] = -p[1];
                u.z[c] = -p[2];
            }
    const Field div = divergence(g, u, Sample::extrapolate);
    for (double v : div) CHECK(v == doctest::Approx(-3.0).epsilon(1e-12));
}

TEST_CASE("ball masks are nested under dilation") {
    const Grid g = make_grid_1d(100, -2.0, 2.0);
    const Mask inner = ball_mask_conservative(g, {0.0, 0.0, 0.0}, 0.5);
    const Mask outer = ball_mask_dilated(g, {0.0, 0.0, 0.0}, 0.5, 0.3);
    double inner_count = 0.0, outer_count = 0.0;
    for (std::size_t i = 0; i < inner.size(); ++i) {
        if (inner[i]) CHECK(outer[i]);
        inner_count += inner[i];
        outer_count += outer[i];
    }
    CHECK(inner_count > 0.0);
    CHECK(outer_count > inner_count);
    CHECK(mask_volume(g, outer) > mask_volume(g, inner));
}
