#!/usr/bin/env python3
"""Independent reference values frozen into the C++ unit tests.

Run this script to regenerate every hand-checked constant; each printed
value is duplicated verbatim in the tests that cite it.
"""
import numpy as np


def gauss_legendre():
    for n in (2, 4):
        x, w = np.polynomial.legendre.leggauss(n)
        print(f"GL{n} nodes  :", ", ".join("%.17g" % v for v in x))
        print(f"GL{n} weights:", ", ".join("%.17g" % v for v in w))
    # frequency grid: map [-1,1] -> (0, v_max], v_max = 3, 4 groups
    x, w = np.polynomial.legendre.leggauss(4)
    vm = 3.0
    print("freq4 nodes  :", ", ".join("%.17g" % v for v in (x + 1) * vm / 2))
    print("freq4 weights:", ", ".join("%.17g" % v for v in w * vm / 2))


def moment_bound_root():
    # quadratic confinement bound, 3-d ball volume 4*pi/3
    m0, R0, g, M0, M0p = 1.0, 1.0, 2.0, 0.0, 0.0
    K = m0**g * R0 ** (3 * (1 - g)) * (4 * np.pi / 3) ** (1 - g)
    T = (-M0p + np.sqrt(M0p**2 - 12 * K * (M0 - m0 * R0**2))) / (6 * K)
    print("T_moment closed form = %.17g" % T)
    print("(2/3) sqrt(pi)       = %.17g" % (2.0 / 3.0 * np.sqrt(np.pi)))
    q = lambda t: M0 + M0p * t + 3 * K * t * t - m0 * R0**2
    lo, hi = 0.0, 10.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        lo, hi = (mid, hi) if q(mid) < 0 else (lo, mid)
    print("T_moment bisection   = %.17g" % (0.5 * (lo + hi)))


def misc():
    print("||sin||_H1 on [0,2pi) = sqrt(2pi) = %.17g" % np.sqrt(2 * np.pi))
    print("ln 2 = %.17g" % np.log(2))
    a, lam = 1e-6, -2.0
    print("damped t0(alpha=1e-6, lam=-2) = %.17g" % (-np.log1p(a / lam) / a))
    b, vref, v = 1.0, 1.0, 2.0
    print("planck bbar(v=2; b=1, vref=1) = %.17g" % (b * v**3 / np.expm1(v / vref)))
    D1, D2, R, v0, gam, w, v = 1.0, 1.0, 1.0, 1.0, 2.0, 0.5, 1.5
    q2 = ((v - v0) / v0) ** 2
    ka = D1 * np.sqrt(R) * w ** ((3 - gam) / (gam - 1)) * np.exp(-(D2 * np.sqrt(R) / w) * q2)
    kbar = D1 * np.sqrt(R) / w * np.exp(-(D2 * np.sqrt(R) / w) * q2)
    print("ka(v=1.5, w=0.5, gamma=2)   = %.17g" % ka)
    print("kbar(v=1.5, w=0.5)          = %.17g" % kbar)
    print("4pi   = %.17g" % (4 * np.pi))
    print("4piform/3 = %.17g" % (4 * np.pi / 3))


if __name__ == "__main__":
    gauss_legendre()
    moment_bound_root()
    misc()
