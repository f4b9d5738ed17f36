"""Compositions, multinomial coefficients, and stencil-symbol powers.

The closed-form evaluators all share one combinatorial core: raise the
stencil symbol

    S(x, y) = sum over entries of  coeff * x^(spatial_shift - offset) * y^(time_order - time_level)

to an integer power and collect like terms.  The expansion enumerates
compositions of the power over the stencil entries and weights each by an
exact multinomial coefficient, so every term is produced once and exactly.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterator, Sequence

from .lattice import EquationSpec, SpecError

# exponent vector (spatial exponents..., time exponent) -> coefficient
TermMap = dict[tuple[int, ...], Fraction]


def compositions(parts_count: int, total: int) -> Iterator[tuple[int, ...]]:
    """Yield every tuple of `parts_count` nonnegative ints summing to `total`,
    in ascending lexicographic order, each exactly once."""
    if parts_count < 1:
        raise SpecError("parts_count must be >= 1")
    if total < 0:
        raise SpecError("total must be >= 0")

    def rec(remaining_parts: int, remaining_total: int):
        if remaining_parts == 1:
            yield (remaining_total,)
            return
        for first in range(remaining_total + 1):
            for rest in rec(remaining_parts - 1, remaining_total - first):
                yield (first,) + rest

    yield from rec(parts_count, total)


def multinomial(total: int, parts: Sequence[int]) -> int:
    """total! / prod(part!) computed exactly via a product of binomials."""
    if sum(parts) != total:
        raise SpecError(f"multinomial parts {tuple(parts)} do not sum to {total}")
    result = 1
    running = 0
    for part in parts:
        running += part
        result *= math.comb(running, part)
    return result


def stencil_symbol_steps(spec: EquationSpec) -> list[tuple[Fraction, tuple[int, ...], int]]:
    """Per stencil entry: (coeff, spatial exponent step, time exponent step)
    of the symbol S(x, y)."""
    if spec.implicit_corner:
        raise SpecError("the corner-implicit form has no stencil symbol of this shape")
    return [
        (e.coeff,
         tuple(s - o for s, o in zip(spec.spatial_shift, e.offset)),
         spec.time_order - e.time_level)
        for e in spec.stencil
    ]


def expand_stencil_power(spec: EquationSpec, j: int) -> TermMap:
    """TermMap of S(x, y)**j with like terms combined and zeros dropped.

    For each composition r of j over the stencil entries the term is

        multinomial(j, r) * prod(coeff**r)
        at exponents  (sum of r * spatial steps, sum of r * time steps).
    """
    if j < 0:
        raise SpecError("power must be >= 0")
    steps = stencil_symbol_steps(spec)
    dim = spec.spatial_dim
    terms: TermMap = {}
    for r in compositions(len(steps), j):
        exps = [0] * (dim + 1)
        weight = Fraction(multinomial(j, r))
        for mult, (coeff, xstep, ystep) in zip(r, steps):
            if mult == 0:
                continue
            weight *= coeff ** mult
            for i in range(dim):
                exps[i] += mult * xstep[i]
            exps[dim] += mult * ystep
        key = tuple(exps)
        acc = terms.get(key)
        acc = weight if acc is None else acc + weight
        if acc == 0:
            terms.pop(key, None)
        else:
            terms[key] = acc
    return terms
