"""Ground-truth engine: direct iteration of the recurrences on a bounded
window, a left-to-right sweep for the corner-implicit form, and verifiers
that compare closed-form values against iterated ones exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import closed_form
from .exactnum import ZERO
from .lattice import (Box, EquationSpec, FieldRow, InitialData, Point,
                      SpecError, dependence_steps)


class WindowOverflowError(RuntimeError):
    """Evolved support would leave the window; names the violating axis."""

    def __init__(self, axis: int, point: Point, window: Box):
        self.axis = axis
        self.point = point
        self.window = window
        super().__init__(
            f"support left the window on axis {axis}: point {point} outside "
            f"[{window.lo[axis]}, {window.hi[axis]}]")


class MissingValueError(KeyError):
    """A recurrence check referenced a value absent from the supplied map."""

    def __init__(self, point: Point, time: int):
        self.point = point
        self.time = time
        super().__init__(f"value at point {point}, time {time} is missing")


@dataclass(frozen=True)
class Region:
    """Query region: a spatial box crossed with an inclusive time range."""

    box: Box
    t_lo: int
    t_hi: int

    def __post_init__(self):
        if self.t_lo < 0 or self.t_hi < self.t_lo:
            raise SpecError(f"bad time range [{self.t_lo}, {self.t_hi}]")


@dataclass(frozen=True)
class EvolutionState:
    """The most recent time_order rows; rows[-1] is the row at `time`."""

    rows: tuple[FieldRow, ...]
    time: int
    window: Box | None

    def __post_init__(self):
        if self.window is not None:
            for row in self.rows:
                for p in row.values:
                    if not self.window.contains(p):
                        axis = next(i for i, (c, l, h) in enumerate(
                            zip(p, self.window.lo, self.window.hi)) if not l <= c <= h)
                        raise WindowOverflowError(axis, p, self.window)

    @property
    def newest(self) -> FieldRow:
        return self.rows[-1]


def forward_steps(spec: EquationSpec) -> tuple[Point, Point]:
    """Per-axis (min, max) support displacement of one update:
    spatial_shift - offset over the stencil entries."""
    dep_lo, dep_hi = dependence_steps(spec)
    return tuple(-h for h in dep_hi), tuple(-l for l in dep_lo)


def auto_window(spec: EquationSpec, initial: InitialData, t_max: int,
                extra: Box | None = None) -> Box | None:
    """Window guaranteed to contain the evolved support up to t_max,
    hulled with an optional extra box (e.g. the query region)."""
    hull = initial.support_hull()
    window = None
    if hull is not None:
        fw_lo, fw_hi = forward_steps(spec)
        window = Box(
            tuple(l + t_max * min(s, 0) for l, s in zip(hull.lo, fw_lo)),
            tuple(h + t_max * max(s, 0) for h, s in zip(hull.hi, fw_hi)),
        )
    if extra is not None:
        window = extra if window is None else window.hull(extra)
    return window


def oracle_step(spec: EquationSpec, state: EvolutionState) -> EvolutionState:
    """Advance one time step: the new row at point e is

        sum over entries of  coeff * rows[time_level](e + offset - shift).
    """
    if spec.implicit_corner:
        raise SpecError("the corner-implicit form is not explicitly steppable; "
                        "use oracle_sweep_implicit")
    if len(state.rows) != spec.time_order:
        raise SpecError(f"state holds {len(state.rows)} rows, "
                        f"spec time_order is {spec.time_order}")
    acc: dict[Point, Fraction] = {}
    for e in spec.stencil:
        delta = tuple(s - o for s, o in zip(spec.spatial_shift, e.offset))
        for p, v in state.rows[e.time_level].values.items():
            key = tuple(c + d for c, d in zip(p, delta))
            acc[key] = acc.get(key, ZERO) + e.coeff * v
    new_row = FieldRow(spec.spatial_dim, acc)
    if state.window is not None:
        for p in new_row.values:
            if not state.window.contains(p):
                axis = next(i for i, (c, l, h) in enumerate(
                    zip(p, state.window.lo, state.window.hi)) if not l <= c <= h)
                raise WindowOverflowError(axis, p, state.window)
    return EvolutionState(state.rows[1:] + (new_row,), state.time + 1, state.window)


def oracle_evolve(spec: EquationSpec, initial: InitialData, t_max: int,
                  window: Box | None = None) -> list[FieldRow]:
    """Rows 0..t_max by repeated stepping; rows 0..time_order-1 are the
    inputs verbatim.  Window defaults to an auto-sized one."""
    if t_max < 0:
        raise SpecError("t_max must be >= 0")
    initial.check_matches(spec)
    if window is None:
        window = auto_window(spec, initial, t_max)
    k = spec.time_order
    out = list(initial.rows[:t_max + 1])
    if t_max < k:
        return out
    state = EvolutionState(initial.rows, k - 1, window)
    for _ in range(k - 1, t_max):
        state = oracle_step(spec, state)
        out.append(state.newest)
    return out


def sweep_window(psi: FieldRow, j_max: int, right_edge: int | None = None) -> Box:
    """Default window for the corner-implicit sweep: the left edge sits at
    support minimum - j_max - 1, where the left-vanishing solution is zero;
    the right edge reaches j_max past the support (or further on request)."""
    box = psi.support_box()
    if box is None:
        raise SpecError("zero initial row needs no sweep window")
    lo = box.lo[0] - j_max - 1
    hi = box.hi[0] + j_max
    if right_edge is not None:
        hi = max(hi, right_edge)
    return Box((lo,), (hi,))


def oracle_sweep_implicit(a: Fraction, b: Fraction, c: Fraction, psi: FieldRow,
                          window: Box | None, j_max: int) -> list[FieldRow]:
    """Rows 0..j_max of the left-vanishing solution of

        U[i+1, j+1] = a U[i, j+1] + b U[i+1, j] + c U[i, j]

    built left-to-right inside the window from a zero left edge.  Values are
    exact for every window point; support may continue past the right edge.
    """
    if psi.dim != 1:
        raise SpecError("corner-implicit sweep is 1D")
    if j_max < 0:
        raise SpecError("j_max must be >= 0")
    if not psi.values:
        return [FieldRow.zero(1) for _ in range(j_max + 1)]
    if window is None:
        window = sweep_window(psi, j_max)
    box = psi.support_box()
    if box.lo[0] - j_max <= window.lo[0]:
        raise WindowOverflowError(0, (window.lo[0],), window)
    if box.hi[0] > window.hi[0]:
        raise WindowOverflowError(0, (box.hi[0],), window)
    lo, hi = window.lo[0], window.hi[0]
    rows = [psi]
    prev = psi
    for _ in range(j_max):
        acc: dict[Point, Fraction] = {}
        val = ZERO  # U at the left edge of the new row
        for i in range(lo, hi):
            val = a * val + b * prev.get((i + 1,)) + c * prev.get((i,))
            if val != 0:
                acc[(i + 1,)] = val
        new_row = FieldRow(1, acc)
        rows.append(new_row)
        prev = new_row
    return rows


@dataclass(frozen=True)
class Mismatch:
    point: Point
    time: int
    closed_value: Fraction
    oracle_value: Fraction


@dataclass(frozen=True)
class VerifyReport:
    checked: int
    mismatches: tuple[Mismatch, ...]
    max_time: int

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def summary(self) -> str:
        return (f"checked {self.checked} points up to time {self.max_time}: "
                f"{len(self.mismatches)} mismatches")


def pointwise_closed(spec: EquationSpec, initial: InitialData, evaluator: str):
    """Per-point closed-form callable for a named evaluator family."""
    psi = initial.rows[0]
    if evaluator == "nd":
        return lambda p, t: closed_form.eval_nd(spec, psi, p, t)
    if evaluator in ("tridiagonal", "tridiagonal-j-n"):
        shape = closed_form.as_tridiagonal(spec)
        if shape is None:
            raise SpecError("spec is not a three-point one-step 1D stencil")
        a, b, c = shape
        exp = "j-n" if evaluator.endswith("j-n") else "j-m"
        return lambda p, t: closed_form.eval_tridiagonal(a, b, c, psi, p[0], t,
                                                         c_exponent=exp)
    if evaluator == "one-row":
        shape = closed_form.as_one_row(spec)
        if shape is None:
            raise SpecError("spec is not a shifted-row 1D one-step stencil")
        coeffs, m = shape
        return lambda p, t: closed_form.eval_one_row(coeffs, m, psi, p[0], t)
    if evaluator == "ninepoint":
        coeffs = closed_form.as_ninepoint(spec)
        if coeffs is None:
            raise SpecError("spec is not a 3x3 one-step 2D stencil")
        return lambda p, t: closed_form.eval_ninepoint(coeffs, psi, p[0], p[1], t)
    if evaluator == "grid-2d":
        shape = closed_form.as_grid_2d(spec)
        if shape is None:
            raise SpecError("spec is not an n-by-m one-step 2D corner stencil")
        coeffs, s, tshift = shape
        return lambda p, t: closed_form.eval_2d_general(coeffs, s, tshift, psi, p, t)
    if evaluator == "two-row":
        return lambda p, t: closed_form.eval_two_row(spec, initial.rows[0],
                                                     initial.rows[1], p[0], t)
    if evaluator == "implicit":
        a, b, c = spec.corner_coefficients()
        return lambda p, t: closed_form.eval_implicit(a, b, c, psi, p[0], t)
    raise SpecError(f"unknown evaluator {evaluator!r}")


def verify_closed_vs_oracle(spec: EquationSpec, initial: InitialData,
                            region: Region, evaluator: str = "auto",
                            window: Box | None = None) -> VerifyReport:
    """Evaluate both engines at every (point, time) of the region and report
    exact mismatches.  Mismatches are data, not errors."""
    initial.check_matches(spec)
    if region.box.dim != spec.spatial_dim:
        raise SpecError("region box dimension differs from the spec")
    t_hi = region.t_hi

    if spec.implicit_corner:
        a, b, c = spec.corner_coefficients()
        psi = initial.rows[0]
        if psi.values:
            swin = window or sweep_window(psi, t_hi, right_edge=region.box.hi[0])
            oracle_rows = oracle_sweep_implicit(a, b, c, psi, swin, t_hi)
        else:
            oracle_rows = [FieldRow.zero(1) for _ in range(t_hi + 1)]
    else:
        oracle_rows = oracle_evolve(spec, initial, t_hi,
                                    window or auto_window(spec, initial, t_hi,
                                                          extra=region.box))

    if evaluator == "auto":
        if spec.implicit_corner:
            closed_get = pointwise_closed(spec, initial, "implicit")
        else:
            crows = closed_form.closed_rows(spec, initial, t_hi)
            closed_get = lambda p, t: crows[t].get(p)
    else:
        closed_get = pointwise_closed(spec, initial, evaluator)

    checked = 0
    mismatches = []
    for p in region.box.points():
        for t in range(region.t_lo, t_hi + 1):
            cv = closed_get(p, t)
            ov = oracle_rows[t].get(p)
            checked += 1
            if cv != ov:
                mismatches.append(Mismatch(p, t, cv, ov))
    return VerifyReport(checked, tuple(mismatches), t_hi)


def rows_to_values(rows: list[FieldRow], box: Box) -> dict[tuple[Point, int], Fraction]:
    """Materialize rows over a box, zeros included, keyed by (point, time)."""
    values = {}
    for t, row in enumerate(rows):
        for p in box.points():
            values[(p, t)] = row.get(p)
    return values


def verify_recurrence(values: dict[tuple[Point, int], Fraction],
                      spec: EquationSpec, region: Region):
    """Check the defining relation pointwise on the region interior.

    Returns (True, None) when the recurrence holds exactly at every
    (point, time) with time >= time_order, else (False, first violation) as
    (point, time, lhs, rhs).  A referenced value absent from the map raises
    MissingValueError naming the point.
    """
    if spec.implicit_corner:
        raise SpecError("recurrence substitution check covers explicit forms only")
    k = spec.time_order
    for t in range(max(region.t_lo, k), region.t_hi + 1):
        for p in region.box.points():
            if (p, t) not in values:
                raise MissingValueError(p, t)
            lhs = values[(p, t)]
            rhs = ZERO
            for e in spec.stencil:
                q = tuple(c + o - s for c, o, s in
                          zip(p, e.offset, spec.spatial_shift))
                t_ref = t - k + e.time_level
                if (q, t_ref) not in values:
                    raise MissingValueError(q, t_ref)
                rhs += e.coeff * values[(q, t_ref)]
            if lhs != rhs:
                return False, (p, t, lhs, rhs)
    return True, None
