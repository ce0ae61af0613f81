"""Class constants for reciprocal prime sums and the convergence of the integral identity.

    python3 scripts/mertens_and_integral.py
"""

from __future__ import annotations

import math

from apsums.baselines import estimate_mertens_B
from apsums.identities import theorem2_partial_integral
from apsums.sieve import ResidueClass

CLASSES = [(1, 0), (4, 1), (4, 3), (5, 1), (5, 2), (5, 3), (5, 4)]


def main() -> None:
    grid = [10**4, 10**5, 10**6, 10**7]
    print("class     B estimate    spread over 1e4..1e7")
    for m, n in CLASSES:
        fit = estimate_mertens_B(ResidueClass(m, n), grid)
        print(f"{n} mod {m:<3} {fit.B_estimate:12.6f}   {fit.residual_bound:.2e}")

    print("\nintegral identity, k = 1, class 1 mod 4, target -log(2)/4 =", f"{-math.log(2) / 4:.8f}")
    for X in (10**2, 10**3, 10**4):
        r = theorem2_partial_integral(1, ResidueClass(4, 1), X)
        print(f"X={X:>6}  partial={r.partial_integral:.8f}  gap={r.gap:.6f}")


if __name__ == "__main__":
    main()
