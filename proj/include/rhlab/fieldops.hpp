// Copyright (c) 2026 rhlab authors.
// SPDX-License-Identifier: MIT

#pragma once

#include "rhlab/grid.hpp"

namespace rhlab {

// Convolution with the compactly supported bump profile
//   j(r) ~ exp(-1/(1 - r^2)) for r < 1, scaled to radius epsilon and
// normalized so the discrete kernel sums to exactly 1 (constants are
// reproduced exactly and periodic sums are preserved to round-off).
struct MollifyResult {
    Field field;
    bool applied = false;  // false when epsilon < 2 * cell width (flagged no-op)
    double epsilon = 0.0;
};
MollifyResult mollify(const Grid& g, const Field& f, double epsilon, Sample mode);

// Discrete Sobolev norm of order s <= 3: L2 norms of all iterated
// centered-difference derivatives up to total order s (one-sided at clamp
// boundaries), weighted by cell volume.
double sobolev_norm(const Grid& g, const Field& f, int s, Sample mode);
// Same norm for the 4-component state (w, u): square root of the sum of
// squared component norms.
double sobolev_norm(const Grid& g, const Field& w, const Vec3Field& u, int s, Sample mode);

double l2_norm(const Grid& g, const Field& f);
double l2_norm(const Grid& g, const Field& w, const Vec3Field& u);

// Dyadic multi-scale profile sum_{j=0}^{octaves-1} 2^-j sin(2^j k0 x + j)
// along the x axis. Its per-octave first-derivative energy is flat, which
// makes mollification errors scale linearly in the kernel radius.
Field multiscale_profile(const Grid& g, double amplitude, int octaves, double k0);

}  // namespace rhlab
