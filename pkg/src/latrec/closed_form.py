"""Closed-form evaluators for the supported equation families.

Under finite-support initial data every evaluator reduces to an exact finite
sum over compositions, so results are exact rationals.  Families:

* ``eval_nd``            -- any one-step explicit equation in d >= 1 spatial dims.
* ``eval_tridiagonal``   -- 1D three-point stencil U[i,j+1] = a U[i-1,j] + b U[i,j] + c U[i+1,j].
* ``eval_one_row``       -- 1D shifted row U[i+m,j+1] = sum c_r U[i+r-1,j].
* ``eval_ninepoint``     -- 2D full 3x3 stencil, one step in time.
* ``eval_2d_general``    -- 2D n-by-m corner stencil with drift (s, t).
* ``eval_two_row``       -- 1D two-step-in-time equation (two initial rows).
* ``eval_implicit``      -- 1D corner form whose right side references the
                            unknown time level; returns the particular
                            solution vanishing left of the initial support.

The specialized evaluators follow their own index bookkeeping and agree
exactly with ``eval_nd`` on equivalent specs; the equivalences are enforced
by the test suite against the iteration oracle.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Sequence

from .combinatorics import compositions, expand_stencil_power, multinomial, stencil_symbol_steps
from .exactnum import ZERO
from .lattice import EquationSpec, FieldRow, InitialData, Point, SpecError, StencilEntry


# ---------------------------------------------------------------------------
# spec constructors / recognizers for the specialized families
# ---------------------------------------------------------------------------

def tridiagonal_spec(a: Fraction, b: Fraction, c: Fraction) -> EquationSpec:
    """U[i, j+1] = a U[i-1, j] + b U[i, j] + c U[i+1, j]."""
    entries = [StencilEntry((-1,), 0, Fraction(a)),
               StencilEntry((0,), 0, Fraction(b)),
               StencilEntry((1,), 0, Fraction(c))]
    return EquationSpec(1, 1, (0,), tuple(entries))


def as_tridiagonal(spec: EquationSpec) -> tuple[Fraction, Fraction, Fraction] | None:
    if (spec.implicit_corner or spec.spatial_dim != 1 or spec.time_order != 1
            or spec.spatial_shift != (0,)):
        return None
    coeffs = {(-1,): ZERO, (0,): ZERO, (1,): ZERO}
    for e in spec.stencil:
        if e.offset not in coeffs:
            return None
        coeffs[e.offset] = e.coeff
    return coeffs[(-1,)], coeffs[(0,)], coeffs[(1,)]


def one_row_spec(coeffs: Sequence[Fraction], m: int) -> EquationSpec:
    """U[i+m, j+1] = c_1 U[i, j] + c_2 U[i+1, j] + ... + c_n U[i+n-1, j]."""
    entries = [StencilEntry((r,), 0, Fraction(c)) for r, c in enumerate(coeffs)]
    return EquationSpec(1, 1, (m,), tuple(entries))


def as_one_row(spec: EquationSpec) -> tuple[list[Fraction], int] | None:
    if spec.implicit_corner or spec.spatial_dim != 1 or spec.time_order != 1:
        return None
    if any(e.offset[0] < 0 for e in spec.stencil):
        return None
    n = max(e.offset[0] for e in spec.stencil) + 1
    coeffs = [ZERO] * n
    for e in spec.stencil:
        coeffs[e.offset[0]] = e.coeff
    return coeffs, spec.spatial_shift[0]


# 3x3 neighbourhood in the fixed reading order used by eval_ninepoint:
# index r-1 runs over dy in (-1, 0, 1), dx in (-1, 0, 1), dx fastest.
NINEPOINT_OFFSETS: tuple[Point, ...] = tuple(
    (dx, dy) for dy in (-1, 0, 1) for dx in (-1, 0, 1))


def ninepoint_spec(coeffs: Sequence[Fraction]) -> EquationSpec:
    if len(coeffs) != 9:
        raise SpecError("ninepoint spec needs exactly 9 coefficients")
    entries = [StencilEntry(off, 0, Fraction(c))
               for off, c in zip(NINEPOINT_OFFSETS, coeffs)]
    return EquationSpec(2, 1, (0, 0), tuple(entries))


def as_ninepoint(spec: EquationSpec) -> list[Fraction] | None:
    if (spec.implicit_corner or spec.spatial_dim != 2 or spec.time_order != 1
            or spec.spatial_shift != (0, 0)):
        return None
    coeffs = {off: ZERO for off in NINEPOINT_OFFSETS}
    for e in spec.stencil:
        if e.offset not in coeffs:
            return None
        coeffs[e.offset] = e.coeff
    return [coeffs[off] for off in NINEPOINT_OFFSETS]


def grid_2d_spec(coeffs: Sequence[Sequence[Fraction]], s: int, t: int) -> EquationSpec:
    """U[i+s, j+t, k+1] = sum_{u=1..n} sum_{v=1..m} c[u][v] U[i+u-1, j+v-1, k]."""
    entries = [StencilEntry((u, v), 0, Fraction(c))
               for u, row in enumerate(coeffs) for v, c in enumerate(row)]
    return EquationSpec(2, 1, (s, t), tuple(entries))


def as_grid_2d(spec: EquationSpec) -> tuple[list[list[Fraction]], int, int] | None:
    if spec.implicit_corner or spec.spatial_dim != 2 or spec.time_order != 1:
        return None
    if any(e.offset[0] < 0 or e.offset[1] < 0 for e in spec.stencil):
        return None
    n = max(e.offset[0] for e in spec.stencil) + 1
    m = max(e.offset[1] for e in spec.stencil) + 1
    coeffs = [[ZERO] * m for _ in range(n)]
    for e in spec.stencil:
        coeffs[e.offset[0]][e.offset[1]] = e.coeff
    return coeffs, spec.spatial_shift[0], spec.spatial_shift[1]


def corner_spec(a: Fraction, b: Fraction, c: Fraction) -> EquationSpec:
    """U[i+1, j+1] = a U[i, j+1] + b U[i+1, j] + c U[i, j] (corner-implicit).

    b = c = 0 is not representable as a spec (stencils need a nonzero entry);
    eval_implicit still accepts raw coefficients for that degenerate case.
    """
    entries = tuple(e for e in (StencilEntry((1,), 0, Fraction(b)),
                                StencilEntry((0,), 0, Fraction(c)))
                    if e.coeff != 0)
    if not entries:
        raise SpecError("corner-implicit spec needs b or c nonzero")
    return EquationSpec(1, 1, (1,), entries, implicit_corner=True,
                        implicit_coeff=Fraction(a))


# ---------------------------------------------------------------------------
# one-step explicit family
# ---------------------------------------------------------------------------

def eval_nd(spec: EquationSpec, psi: FieldRow, query: Point, time: int) -> Fraction:
    """Value at (query, time) of the one-step equation with row 0 equal to psi.

    Sum over compositions r of `time` over the stencil entries of

        multinomial(time, r) * prod(coeff**r) * psi(query - a(r))

    where a(r) accumulates r copies of (spatial_shift - offset) per entry.
    """
    if spec.implicit_corner:
        raise SpecError("eval_nd does not handle the corner-implicit form")
    if spec.time_order != 1:
        raise SpecError("eval_nd requires time_order 1")
    if psi.dim != spec.spatial_dim:
        raise SpecError(f"psi dim {psi.dim} != spec spatial_dim {spec.spatial_dim}")
    if time < 0:
        raise SpecError("time must be >= 0")
    steps = stencil_symbol_steps(spec)
    dim = spec.spatial_dim
    query = tuple(query)
    total = ZERO
    for r in compositions(len(steps), time):
        disp = [0] * dim
        for mult, (_, xstep, _) in zip(r, steps):
            if mult:
                for i in range(dim):
                    disp[i] += mult * xstep[i]
        sample = psi.get(tuple(q - d for q, d in zip(query, disp)))
        if sample == 0:
            continue
        weight = Fraction(multinomial(time, r))
        for mult, (coeff, _, _) in zip(r, steps):
            if mult:
                weight *= coeff ** mult
        total += weight * sample
    return total


def eval_tridiagonal(a: Fraction, b: Fraction, c: Fraction, psi: FieldRow,
                     i: int, j: int, c_exponent: str = "j-m") -> Fraction:
    """Double binomial sum for the three-point stencil:

        sum_{m=0..j} sum_{n=0..m} C(j,m) C(m,n) a^n b^(m-n) c^(j-m) psi(i+j-m-n)

    ``c_exponent`` selects the exponent of c: "j-m" (the self-consistent
    form) or "j-n" (a known-inconsistent variant kept as a negative control;
    it disagrees with the iteration oracle already at j=1).
    """
    if c_exponent not in ("j-m", "j-n"):
        raise SpecError("c_exponent must be 'j-m' or 'j-n'")
    if j < 0:
        raise SpecError("time must be >= 0")
    total = ZERO
    for m in range(j + 1):
        for n in range(m + 1):
            sample = psi.get((i + j - m - n,))
            if sample == 0:
                continue
            exp_c = j - m if c_exponent == "j-m" else j - n
            total += (comb(j, m) * comb(m, n)
                      * a ** n * b ** (m - n) * c ** exp_c * sample)
    return total


def eval_one_row(coeffs: Sequence[Fraction], m: int, psi: FieldRow,
                 i: int, j: int) -> Fraction:
    """Composition sum for U[i+m, j+1] = sum_r c_r U[i+r-1, j]:

        sum over compositions (s_1..s_n) of j of
        multinomial * prod(c_r**s_r) * psi(i + sum(r * s_r) - (m+1) j)
    """
    if not coeffs:
        raise SpecError("need at least one coefficient")
    if j < 0:
        raise SpecError("time must be >= 0")
    n = len(coeffs)
    total = ZERO
    for s in compositions(n, j):
        arg = i + sum((r + 1) * sr for r, sr in enumerate(s)) - (m + 1) * j
        sample = psi.get((arg,))
        if sample == 0:
            continue
        weight = Fraction(multinomial(j, s))
        for c, sr in zip(coeffs, s):
            if sr:
                weight *= c ** sr
        total += weight * sample
    return total


def eval_ninepoint(coeffs: Sequence[Fraction], psi: FieldRow,
                   i: int, j: int, k: int) -> Fraction:
    """Composition sum for the full 3x3 one-step stencil:

        sum over compositions (s_1..s_9) of k of
        multinomial * prod(c_r**s_r) * psi(i - a, j - b)

    with a = s1 - s3 + s4 - s6 + s7 - s9 and b = s1 + s2 + s3 - s7 - s8 - s9.
    """
    if len(coeffs) != 9:
        raise SpecError("eval_ninepoint needs exactly 9 coefficients")
    if k < 0:
        raise SpecError("time must be >= 0")
    total = ZERO
    for s in compositions(9, k):
        s1, s2, s3, s4, s5, s6, s7, s8, s9 = s
        a = s1 - s3 + s4 - s6 + s7 - s9
        b = s1 + s2 + s3 - s7 - s8 - s9
        sample = psi.get((i - a, j - b))
        if sample == 0:
            continue
        weight = Fraction(multinomial(k, s))
        for c, sr in zip(coeffs, s):
            if sr:
                weight *= c ** sr
        total += weight * sample
    return total


def eval_2d_general(coeffs: Sequence[Sequence[Fraction]], s: int, t: int,
                    psi: FieldRow, query: Point, k: int) -> Fraction:
    """Composition sum for U[i+s, j+t, k+1] = sum_{u,v} c_uv U[i+u-1, j+v-1, k]:

        sum over compositions (s_uv) of k of
        multinomial * prod(c_uv**s_uv) * psi(i - a, j - b)

    with a = (s+1) k - sum(u * s_uv) and b = (t+1) k - sum(v * s_uv).
    """
    if k < 0:
        raise SpecError("time must be >= 0")
    flat = [(u + 1, v + 1, c) for u, row in enumerate(coeffs) for v, c in enumerate(row)]
    if not flat:
        raise SpecError("need at least one coefficient")
    i, j = query
    total = ZERO
    for comp in compositions(len(flat), k):
        a = (s + 1) * k
        b = (t + 1) * k
        for mult, (u, v, _) in zip(comp, flat):
            a -= mult * u
            b -= mult * v
        sample = psi.get((i - a, j - b))
        if sample == 0:
            continue
        weight = Fraction(multinomial(k, comp))
        for mult, (_, _, c) in zip(comp, flat):
            if mult:
                weight *= c ** mult
        total += weight * sample
    return total


# ---------------------------------------------------------------------------
# corner-implicit family
# ---------------------------------------------------------------------------

def backward_difference(psi: FieldRow, a: Fraction) -> FieldRow:
    """The row k -> psi(k) - a * psi(k-1), finite-support like psi."""
    if psi.dim != 1:
        raise SpecError("backward_difference is defined for 1D rows")
    out: dict[Point, Fraction] = {}
    for (k,), v in psi.values.items():
        out[(k,)] = out.get((k,), ZERO) + v
        out[(k + 1,)] = out.get((k + 1,), ZERO) - a * v
    return FieldRow(1, out)


def corner_kernel(s: int, j: int, a: Fraction, b: Fraction, c: Fraction) -> Fraction:
    """Coefficient of x^s y^j in sum_J (a x + b y + c x y)^J:

        sum_{g=0..min(s,j)} multinomial(s+j-g; s-g, j-g, g) a^(s-g) b^(j-g) c^g
    """
    if s < 0 or j < 0:
        raise SpecError("kernel indices must be >= 0")
    total = ZERO
    for g in range(min(s, j) + 1):
        weight = Fraction(multinomial(s + j - g, (s - g, j - g, g)))
        total += weight * a ** (s - g) * b ** (j - g) * c ** g
    return total


def eval_implicit(a: Fraction, b: Fraction, c: Fraction, psi: FieldRow,
                  i: int, j: int) -> Fraction:
    """Left-vanishing particular solution of the corner form at (i, j):

        sum_{s >= 0} (psi - a shift(psi))(i - s) * corner_kernel(s, j)

    The sum is finite because the differenced row has finite support.
    """
    om = backward_difference(psi, a)
    total = ZERO
    for (k,), v in om.values.items():
        s = i - k
        if s < 0:
            continue
        total += v * corner_kernel(s, j, a, b, c)
    return total


# ---------------------------------------------------------------------------
# two-initial-row family (time_order 2, 1D)
# ---------------------------------------------------------------------------

def _check_two_row_spec(spec: EquationSpec) -> None:
    if spec.implicit_corner or spec.time_order != 2 or spec.spatial_dim != 1:
        raise SpecError("two-row evaluation needs an explicit 1D spec with time_order 2")


def _two_row_branch_terms(spec: EquationSpec, target_b: int):
    """Yield (spatial shift a, weight) of every power-expansion term whose
    time exponent equals target_b.  Orders J with J <= target_b <= 2J
    contribute; smaller or larger J cannot reach target_b."""
    steps = stencil_symbol_steps(spec)
    for j_order in range((target_b + 1) // 2, target_b + 1):
        for r in compositions(len(steps), j_order):
            b = sum(mult * ystep for mult, (_, _, ystep) in zip(r, steps))
            if b != target_b:
                continue
            a = sum(mult * xstep[0] for mult, (_, xstep, _) in zip(r, steps))
            weight = Fraction(multinomial(j_order, r))
            for mult, (coeff, _, _) in zip(r, steps):
                if mult:
                    weight *= coeff ** mult
            yield a, weight


def eval_two_row(spec: EquationSpec, psi0: FieldRow, psi1: FieldRow,
                 i: int, j: int) -> Fraction:
    """Value at (i, j) of the two-step-in-time 1D equation with rows 0 and 1
    given by psi0 and psi1.

    Three branches: psi0 sampled through the terms at time exponent j,
    psi1 through the terms at j-1, minus a psi0 correction through the j-1
    terms weighted by the newest-level coefficients.  Rows 0 and 1 are
    reproduced verbatim.
    """
    _check_two_row_spec(spec)
    if j < 0:
        raise SpecError("time must be >= 0")
    m = spec.spatial_shift[0]
    total = ZERO
    for a, w in _two_row_branch_terms(spec, j):
        sample = psi0.get((i - a,))
        if sample != 0:
            total += w * sample
    if j >= 1:
        newest = [(e.coeff, m - e.offset[0]) for e in spec.stencil if e.time_level == 1]
        for a, w in _two_row_branch_terms(spec, j - 1):
            sample = psi1.get((i - a,))
            if sample != 0:
                total += w * sample
            for coeff, xstep in newest:
                sample = psi0.get((i - a - xstep,))
                if sample != 0:
                    total -= w * coeff * sample
    return total


# ---------------------------------------------------------------------------
# bulk evaluation and dispatch
# ---------------------------------------------------------------------------

def _accumulate(acc: dict[Point, Fraction], psi: FieldRow, shift: Point,
                factor: Fraction) -> None:
    if factor == 0:
        return
    for p, v in psi.values.items():
        key = tuple(c + s for c, s in zip(p, shift))
        acc[key] = acc.get(key, ZERO) + factor * v


def closed_rows(spec: EquationSpec, initial: InitialData, t_max: int) -> list[FieldRow]:
    """Rows 0..t_max of the closed-form solution, as finite-support fields.

    Available for time_order 1 (any spatial dim) and the 1D time_order 2
    family.  The corner-implicit solution has unbounded rightward support,
    so it has no row representation here; evaluate it pointwise instead.
    """
    if spec.implicit_corner:
        raise SpecError("corner-implicit rows have infinite support; evaluate pointwise")
    initial.check_matches(spec)
    dim = spec.spatial_dim
    if spec.time_order == 1:
        psi = initial.rows[0]
        rows = []
        for t in range(t_max + 1):
            acc: dict[Point, Fraction] = {}
            for key, coef in expand_stencil_power(spec, t).items():
                _accumulate(acc, psi, key[:dim], coef)
            rows.append(FieldRow(dim, acc))
        return rows
    if spec.time_order == 2 and dim == 1:
        psi0, psi1 = initial.rows
        m = spec.spatial_shift[0]
        newest = [(e.coeff, m - e.offset[0]) for e in spec.stencil if e.time_level == 1]
        rows = []
        for j in range(t_max + 1):
            acc = {}
            for a, w in _two_row_branch_terms(spec, j):
                _accumulate(acc, psi0, (a,), w)
            if j >= 1:
                for a, w in _two_row_branch_terms(spec, j - 1):
                    _accumulate(acc, psi1, (a,), w)
                    for coeff, xstep in newest:
                        _accumulate(acc, psi0, (a + xstep,), -w * coeff)
            rows.append(FieldRow(1, acc))
        return rows
    raise SpecError(f"no closed form for time_order {spec.time_order} "
                    f"with spatial_dim {dim}")


def closed_value(spec: EquationSpec, initial: InitialData, point: Point,
                 time: int) -> Fraction:
    """Single-point closed-form value, dispatched on the spec family."""
    initial.check_matches(spec)
    if spec.implicit_corner:
        a, b, c = spec.corner_coefficients()
        return eval_implicit(a, b, c, initial.rows[0], point[0], time)
    if spec.time_order == 1:
        return eval_nd(spec, initial.rows[0], point, time)
    if spec.time_order == 2 and spec.spatial_dim == 1:
        return eval_two_row(spec, initial.rows[0], initial.rows[1], point[0], time)
    raise SpecError(f"no closed form for time_order {spec.time_order} "
                    f"with spatial_dim {spec.spatial_dim}")
