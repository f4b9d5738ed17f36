"""Lattice points, finite-support grid functions, and equation specifications.

A lattice point is a plain tuple of ints whose length is the spatial
dimension.  A ``FieldRow`` is one time level of data: a sparse map from
points to nonzero rationals (absent means exactly zero).  An
``EquationSpec`` pins down one linear constant-coefficient recurrence

    U[p + shift, t + k] = sum over entries of  coeff * U[p + offset, t + level]

with ``level`` in ``[0, k-1]``.  The corner-implicit 1D form, whose right
side also references the unknown time level, is marked with a flag and a
dedicated coefficient slot instead of an out-of-range entry.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exactnum import ZERO

Point = tuple[int, ...]


class SpecError(ValueError):
    """An equation, field, or parameter violates a structural constraint."""


def _as_point(coords, dim: int, what: str) -> Point:
    p = tuple(int(c) for c in coords)
    if len(p) != dim:
        raise SpecError(f"{what} has length {len(p)}, expected spatial dimension {dim}")
    return p


@dataclass(frozen=True)
class Box:
    """Closed per-axis interval box [lo[i], hi[i]]."""

    lo: Point
    hi: Point

    def __post_init__(self):
        if len(self.lo) != len(self.hi):
            raise SpecError("box lo/hi dimension mismatch")
        if any(l > h for l, h in zip(self.lo, self.hi)):
            raise SpecError(f"empty box: lo={self.lo} hi={self.hi}")

    @property
    def dim(self) -> int:
        return len(self.lo)

    def contains(self, p: Point) -> bool:
        return all(l <= c <= h for l, c, h in zip(self.lo, p, self.hi))

    def shifted(self, d: Point) -> "Box":
        return Box(
            tuple(l + s for l, s in zip(self.lo, d)),
            tuple(h + s for h, s in zip(self.hi, d)),
        )

    def hull(self, other: "Box") -> "Box":
        return Box(
            tuple(min(a, b) for a, b in zip(self.lo, other.lo)),
            tuple(max(a, b) for a, b in zip(self.hi, other.hi)),
        )

    def points(self):
        """Iterate all lattice points, last axis fastest (lexicographic)."""

        def rec(prefix: tuple, axis: int):
            if axis == self.dim:
                yield prefix
                return
            for c in range(self.lo[axis], self.hi[axis] + 1):
                yield from rec(prefix + (c,), axis + 1)

        yield from rec((), 0)

    def size(self) -> int:
        n = 1
        for l, h in zip(self.lo, self.hi):
            n *= h - l + 1
        return n


@dataclass(frozen=True)
class StencilEntry:
    offset: Point
    time_level: int
    coeff: Fraction


@dataclass(frozen=True)
class EquationSpec:
    """Stencil, shifts and dimensions of one linear partial difference equation.

    ``implicit_corner`` marks the 1D one-step corner form

        U[i+1, j+1] = implicit_coeff * U[i, j+1]  +  (explicit stencil terms)

    where the explicit terms follow the ordinary convention above with
    spatial_shift = (1,).
    """

    spatial_dim: int
    time_order: int
    spatial_shift: Point
    stencil: tuple[StencilEntry, ...]
    implicit_corner: bool = False
    implicit_coeff: Fraction | None = None

    def __post_init__(self):
        if self.spatial_dim < 1:
            raise SpecError("spatial_dim must be >= 1")
        if self.time_order < 1:
            raise SpecError("time_order must be >= 1")
        if len(self.spatial_shift) != self.spatial_dim:
            raise SpecError("spatial_shift length must equal spatial_dim")
        entries = tuple(
            StencilEntry(_as_point(e.offset, self.spatial_dim, "stencil offset"),
                         int(e.time_level), Fraction(e.coeff))
            for e in self.stencil
            if e.coeff != 0
        )
        object.__setattr__(self, "stencil", entries)
        if not entries:
            raise SpecError("stencil needs at least one entry with nonzero coeff")
        seen = set()
        for e in entries:
            if not 0 <= e.time_level < self.time_order:
                raise SpecError(
                    f"time_level {e.time_level} outside [0, {self.time_order - 1}]")
            key = (e.offset, e.time_level)
            if key in seen:
                raise SpecError(f"duplicate stencil entry at {key}")
            seen.add(key)
        if self.implicit_corner:
            if self.spatial_dim != 1 or self.time_order != 1:
                raise SpecError("implicit_corner requires spatial_dim=1 and time_order=1")
            if self.implicit_coeff is None:
                raise SpecError("implicit_corner spec needs implicit_coeff")
            object.__setattr__(self, "implicit_coeff", Fraction(self.implicit_coeff))
        elif self.implicit_coeff is not None:
            raise SpecError("implicit_coeff is only meaningful with implicit_corner")

    def corner_coefficients(self) -> tuple[Fraction, Fraction, Fraction]:
        """(a, b, c) of the corner form U[i+1,j+1] = a U[i,j+1] + b U[i+1,j] + c U[i,j]."""
        if not self.implicit_corner:
            raise SpecError("not a corner-implicit spec")
        if self.spatial_shift != (1,):
            raise SpecError("corner-implicit spec must have spatial_shift (1,)")
        b = c = ZERO
        for e in self.stencil:
            if e.offset == (1,):
                b = e.coeff
            elif e.offset == (0,):
                c = e.coeff
            else:
                raise SpecError(f"corner-implicit stencil offset {e.offset} not in {{(0,), (1,)}}")
        return self.implicit_coeff, b, c


@dataclass(frozen=True)
class FieldRow:
    """Finite-support map from lattice points to nonzero rationals.

    Treat instances as immutable; ``with_value`` returns an updated copy.
    """

    dim: int
    values: dict[Point, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for p, v in self.values.items():
            p = _as_point(p, self.dim, "field point")
            v = Fraction(v)
            if v != 0:
                clean[p] = v
        object.__setattr__(self, "values", clean)

    @classmethod
    def delta(cls, dim: int = 1) -> "FieldRow":
        """Unit mass at the origin."""
        return cls(dim, {(0,) * dim: Fraction(1)})

    @classmethod
    def zero(cls, dim: int = 1) -> "FieldRow":
        return cls(dim, {})

    def get(self, p: Point) -> Fraction:
        if len(p) != self.dim:
            raise SpecError(f"point of length {len(p)} queried in a dim-{self.dim} field")
        return self.values.get(tuple(p), ZERO)

    def with_value(self, p: Point, v: Fraction) -> "FieldRow":
        new = dict(self.values)
        p = _as_point(p, self.dim, "field point")
        if v == 0:
            new.pop(p, None)
        else:
            new[p] = Fraction(v)
        return FieldRow(self.dim, new)

    def support_box(self) -> Box | None:
        """Tight per-axis bounds of the support; None for the zero field."""
        if not self.values:
            return None
        lo = [min(p[i] for p in self.values) for i in range(self.dim)]
        hi = [max(p[i] for p in self.values) for i in range(self.dim)]
        return Box(tuple(lo), tuple(hi))

    def shifted(self, d: Point) -> "FieldRow":
        d = _as_point(d, self.dim, "shift vector")
        return FieldRow(self.dim, {tuple(c + s for c, s in zip(p, d)): v
                                   for p, v in self.values.items()})

    def scaled(self, factor: Fraction) -> "FieldRow":
        return FieldRow(self.dim, {p: factor * v for p, v in self.values.items()})

    def __add__(self, other: "FieldRow") -> "FieldRow":
        if self.dim != other.dim:
            raise SpecError("cannot add fields of different dimension")
        total = dict(self.values)
        for p, v in other.values.items():
            total[p] = total.get(p, ZERO) + v
        return FieldRow(self.dim, total)

    def total(self) -> Fraction:
        return sum(self.values.values(), ZERO)

    def sorted_items(self):
        return sorted(self.values.items())


@dataclass(frozen=True)
class InitialData:
    """The first time_order rows; row t is the data at time t."""

    rows: tuple[FieldRow, ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        if not self.rows:
            raise SpecError("initial data needs at least one row")
        dim = self.rows[0].dim
        if any(r.dim != dim for r in self.rows):
            raise SpecError("initial rows disagree on dimension")

    @property
    def dim(self) -> int:
        return self.rows[0].dim

    def check_matches(self, spec: EquationSpec) -> None:
        if len(self.rows) != spec.time_order:
            raise SpecError(
                f"{len(self.rows)} initial rows given, spec time_order is {spec.time_order}")
        if self.dim != spec.spatial_dim:
            raise SpecError(
                f"initial data dim {self.dim} != spec spatial_dim {spec.spatial_dim}")

    def support_hull(self) -> Box | None:
        hull = None
        for r in self.rows:
            b = r.support_box()
            if b is not None:
                hull = b if hull is None else hull.hull(b)
        return hull


def dependence_steps(spec: EquationSpec) -> tuple[Point, Point]:
    """Per-axis (min, max) of offset - spatial_shift over the stencil entries."""
    deltas = [tuple(o - s for o, s in zip(e.offset, spec.spatial_shift))
              for e in spec.stencil]
    lo = tuple(min(d[i] for d in deltas) for i in range(spec.spatial_dim))
    hi = tuple(max(d[i] for d in deltas) for i in range(spec.spatial_dim))
    return lo, hi


def domain_of_dependence(spec: EquationSpec, query: Point, time: int) -> list[Box | None]:
    """Per initial row t, a box containing every point that can influence
    the solution at (query, time).  None where the row is unreachable.

    Computed by propagating per-axis interval hulls backwards through the
    stencil: the value at (p, tau) references (p + offset - shift,
    tau - (k - time_level)) for each entry.
    """
    if spec.implicit_corner:
        raise SpecError("the corner-implicit form depends on an unbounded leftward ray, "
                        "not a finite box")
    if time < 0:
        raise SpecError("time must be >= 0")
    query = _as_point(query, spec.spatial_dim, "query point")
    k = spec.time_order
    reach: dict[int, Box] = {time: Box(query, query)}
    result: list[Box | None] = [None] * k
    for tau in range(time, -1, -1):
        box = reach.pop(tau, None)
        if box is None:
            continue
        if tau < k:
            result[tau] = box if result[tau] is None else result[tau].hull(box)
            continue
        for e in spec.stencil:
            d = tuple(o - s for o, s in zip(e.offset, spec.spatial_shift))
            target = tau - (k - e.time_level)
            moved = box.shifted(d)
            prev = reach.get(target)
            reach[target] = moved if prev is None else prev.hull(moved)
    return result
