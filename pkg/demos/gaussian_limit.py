"""After normalizing to unit variance, the family converges to the
standard Gaussian as n grows; the sup-distance between densities decays
monotonically.

Run: python3 demos/gaussian_limit.py
"""

import math

import numpy as np

from ultrafid import moment, poincare_report


def main():
    print("Variance-normalized sup-distance to the standard Gaussian")
    print("-" * 58)
    x = np.linspace(-5, 5, 801)
    report = poincare_report((1, 2, 5, 10, 20, 50, 100), x)
    prev = None
    for n, dist in report.entries:
        sigma = math.sqrt(moment(n, 2))
        arrow = "" if prev is None else f"   (x {dist/prev:.3f})"
        print(f"  n={n:4d}:  sigma = {sigma:.6f}   sup-distance = {dist:.6f}{arrow}")
        prev = dist
    print()
    print("The distance roughly halves each time n quadruples: O(1/n) decay.")


if __name__ == "__main__":
    main()
