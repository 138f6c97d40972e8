// Copyright (c) 2026 rhlab authors.
// SPDX-License-Identifier: MIT

#pragma once

#include <vector>

#include "rhlab/grid.hpp"

namespace rhlab {

// Gauss-Legendre rule on [-1, 1], nodes ascending.
struct GaussRule {
    std::vector<double> node;
    std::vector<double> weight;
};
GaussRule gauss_legendre(int n);

// Direction set on the unit sphere: Gauss-Legendre in the polar cosine times a
// uniform rule in azimuth. `order` polar nodes and 2*order azimuthal nodes, so
// the ordinate count grows as 2*order^2. Weights sum to 4*pi; first moments
// vanish; second moments equal (4*pi/3) * identity from order 2 on.
struct AngularQuadrature {
    int order = 0;
    int n_polar = 0;
    int n_azimuth = 0;
    std::vector<Vec3> omega;     // unit direction per ordinate
    std::vector<double> weight;  // positive, sums to 4*pi
    std::size_t size() const { return omega.size(); }
};
AngularQuadrature build_angular_quadrature(int order);

// Frequency groups on (0, v_max]: Gauss-Legendre nodes mapped from [-1, 1],
// weights unnormalized so they sum to v_max.
struct FrequencyGrid {
    double v_max = 0.0;
    std::vector<double> node;
    std::vector<double> weight;
    std::size_t size() const { return node.size(); }
};
FrequencyGrid build_frequency_grid(int groups, double v_max);

}  // namespace rhlab
