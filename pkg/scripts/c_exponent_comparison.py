#!/usr/bin/env python3
"""Compare the two c-exponent variants of the three-point closed form
against the iteration oracle on a small grid.

The double binomial sum for U[i,j+1] = a U[i-1,j] + b U[i,j] + c U[i+1,j]
carries a factor c**e per term.  Tying e to the outer summation index
("j-m") satisfies the recurrence; tying it to the inner one ("j-n") does
not, and this script prints exactly where the two diverge, starting at the
very first time step.
"""

import sys
from fractions import Fraction

from latrec import (FieldRow, InitialData, eval_tridiagonal, oracle_evolve,
                    tridiagonal_spec)

A, B, C = Fraction(1), Fraction(2), Fraction(3)
T_MAX = 4


def main() -> int:
    delta = FieldRow.delta(1)
    spec = tridiagonal_spec(A, B, C)
    rows = oracle_evolve(spec, InitialData((delta,)), T_MAX)

    print(f"stencil (a, b, c) = ({A}, {B}, {C}), initial data: unit mass at 0")
    print(f"{'i':>4} {'j':>3} {'oracle':>10} {'c^(j-m)':>10} {'c^(j-n)':>10}  verdict")
    divergences = 0
    for j in range(T_MAX + 1):
        for i in range(-j, j + 1):
            ov = rows[j].get((i,))
            good = eval_tridiagonal(A, B, C, delta, i, j)
            bad = eval_tridiagonal(A, B, C, delta, i, j, c_exponent="j-n")
            verdict = "ok" if bad == ov else "j-n diverges"
            if bad != ov:
                divergences += 1
            assert good == ov, (i, j)
            print(f"{i:>4} {j:>3} {str(ov):>10} {str(good):>10} {str(bad):>10}  {verdict}")
    print()
    print(f"outer-index variant: exact everywhere; "
          f"inner-index variant: {divergences} divergent points")
    return 0


if __name__ == "__main__":
    sys.exit(main())
