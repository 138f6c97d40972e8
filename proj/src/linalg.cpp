// Copyright (c) 2026 rhlab authors.
// SPDX-License-Identifier: MIT

#include "rhlab/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace rhlab {

std::array<double, 4> symmetric_eigenvalues_4(const Mat4& input) {
    Mat4 a = input;
    auto at = [&a](int r, int c) -> double& { return a[4 * r + c]; };
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int r = 0; r < 4; ++r)
            for (int c = r + 1; c < 4; ++c) off += at(r, c) * at(r, c);
        if (off < 1e-30) break;
        for (int p = 0; p < 4; ++p)
            for (int q = p + 1; q < 4; ++q) {
                const double apq = at(p, q);
                if (apq == 0.0) continue;
                const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < 4; ++k) {
                    const double akp = at(k, p), akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < 4; ++k) {
                    const double apk = at(p, k), aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
            }
    }
    std::array<double, 4> ev{at(0, 0), at(1, 1), at(2, 2), at(3, 3)};
    std::sort(ev.begin(), ev.end());
    return ev;
}

Spectrum3 eigenvalues_3(const Mat3& m) {
    // characteristic polynomial lambda^3 - tr lambda^2 + c1 lambda - det = 0
    const double a = m[0], b = m[1], c = m[2];
    const double d = m[3], e = m[4], f = m[5];
    const double g = m[6], h = m[7], i = m[8];
    const double tr = a + e + i;
    const double c1 = (a * e - b * d) + (a * i - c * g) + (e * i - f * h);
    const double det =
        a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);

    // depressed cubic t^3 + p t + q with lambda = t + tr/3
    const double s = tr / 3.0;
    const double p = c1 - 3.0 * s * s;
    const double q = -det + c1 * s - 2.0 * s * s * s;

    Spectrum3 out;
    const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d),
                                   std::abs(e), std::abs(f), std::abs(g), std::abs(h),
                                   std::abs(i), 1e-300});
    const double disc = -4.0 * p * p * p - 27.0 * q * q;
    const double tol = 1e-12 * scale * scale * scale;
    if (disc >= -tol) {
        // three real roots (trigonometric form)
        if (std::abs(p) < 1e-300) {
            const double r = std::cbrt(-q);
            out.real_roots = {r + s, r + s, r + s};
        } else {
            const double mfac = 2.0 * std::sqrt(std::max(0.0, -p / 3.0));
            double arg = 3.0 * q / (p * mfac);
            arg = std::clamp(arg, -1.0, 1.0);
            const double phi = std::acos(arg) / 3.0;
            out.real_roots = {mfac * std::cos(phi) + s,
                              mfac * std::cos(phi - 2.0 * M_PI / 3.0) + s,
                              mfac * std::cos(phi - 4.0 * M_PI / 3.0) + s};
        }
    } else {
        // one real root + conjugate pair (Cardano)
        const double sq = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
        const double u = std::cbrt(-q / 2.0 + sq);
        const double v = std::cbrt(-q / 2.0 - sq);
        const double real_root = u + v + s;
        out.real_roots = {real_root};
        out.complex_pair = true;
        out.pair_real = -(u + v) / 2.0 + s;
    }
    std::sort(out.real_roots.begin(), out.real_roots.end());
    return out;
}

}  // namespace rhlab
