"""Density-level corollaries: Beta push-forwards with exact half-integer
constants, density recovery from boundary values of the transform, and
the moment sequence.

Run: python3 demos/density_corollaries.py
"""

from fractions import Fraction

import numpy as np

from ultrafid import (
    BetaParams,
    beta_density,
    catalan,
    check_beta_square,
    check_beta_symmetric,
    density_ultra,
    moment,
    stieltjes_invert,
)


def main():
    print("Affine image (2 - x)/4 is Beta(n + 1/2, n + 1/2) on (0, 1)")
    print("-" * 62)
    u = np.linspace(0.005, 0.995, 199)
    for n in (1, 3, 8):
        print(f"  n={n}:  sup residual = {check_beta_symmetric(n, u):.2e}")

    print()
    print("The square map x^2/4 gives Beta(1/2, n + 1/2)")
    print("-" * 62)
    for n in (1, 3, 8):
        print(f"  n={n}:  sup residual = {check_beta_square(n, u):.2e}")

    print()
    print("Half-integer Beta densities are exact rationals times powers of pi")
    print("-" * 62)
    p = BetaParams(Fraction(1, 2), Fraction(1, 2))
    print(f"  arcsine density at 1/2: {beta_density(p, 0.5):.15f}  (= 2/pi)")

    print()
    print("Stieltjes inversion: -Im G(x + i eps)/pi converges linearly in eps")
    print("-" * 62)
    x = 0.7
    for eps in (1e-3, 1e-4, 1e-5, 1e-6):
        rec = stieltjes_invert(3, x, eps)
        err = abs(rec - density_ultra(3, x))
        print(f"  eps={eps:.0e}:  recovered {rec:.10f}   error {err:.2e}")

    print()
    print("Moments: semicircle even moments are the Catalan numbers")
    print("-" * 62)
    for k in range(6):
        print(f"  m_{2*k:2d} = {moment(1, 2*k):14.8f}   C_{k} = {catalan(k)}")
    print()
    print("Second moments 2/(n+1):")
    for n in (1, 2, 4, 9):
        print(f"  n={n}:  m_2 = {moment(n, 2):.12f}   expected {2/(n+1):.12f}")


if __name__ == "__main__":
    main()
