"""Model presets: 1D lattice random walk and discrete heat flow.

Both are three-point one-step equations; the physics lives in the parameter
constraints, not in the evaluators.  A walker stays put with probability d
and moves one unit right/left with probabilities p/q, so the occupation
probabilities follow

    a[i, j+1] = p a[i-1, j] + d a[i, j] + q a[i+1, j].

Discrete heat flow with transfer coefficient r exchanges r times the
temperature difference with each neighbour per step, giving coefficients
(r, 1 - 2r, r); total temperature is conserved and 0 < r <= 1/2 keeps the
update a convex average (stable).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .closed_form import eval_nd, tridiagonal_spec
from .lattice import EquationSpec, FieldRow, InitialData, SpecError
from .oracle import oracle_evolve


@dataclass(frozen=True)
class RandomWalkParams:
    p: Fraction
    d: Fraction
    q: Fraction

    def __post_init__(self):
        for name in ("p", "d", "q"):
            value = Fraction(getattr(self, name))
            object.__setattr__(self, name, value)
            if value < 0:
                raise SpecError(f"probability {name} must be >= 0, got {value}")
        if self.p + self.d + self.q != 1:
            raise SpecError(
                f"probabilities must sum to 1 exactly, got {self.p + self.d + self.q}")


@dataclass(frozen=True)
class HeatParams:
    r: Fraction

    def __post_init__(self):
        object.__setattr__(self, "r", Fraction(self.r))
        if self.r <= 0:
            raise SpecError(f"transfer coefficient r must be > 0, got {self.r}")

    @property
    def stable(self) -> bool:
        return self.r <= Fraction(1, 2)


def random_walk_spec(params: RandomWalkParams) -> EquationSpec:
    return tridiagonal_spec(params.p, params.d, params.q)


def heat_spec(params: HeatParams) -> EquationSpec:
    r = params.r
    return tridiagonal_spec(r, 1 - 2 * r, r)


def random_walk_distribution(params: RandomWalkParams, j: int) -> FieldRow:
    """Occupation probabilities after j steps from the origin.

    The walker starts at 0 with probability 1; the support after j steps is
    within [-j, j]."""
    if j < 0:
        raise SpecError("step count must be >= 0")
    spec = random_walk_spec(params)
    delta = FieldRow.delta(1)
    values = {}
    for i in range(-j, j + 1):
        v = eval_nd(spec, delta, (i,), j)
        if v != 0:
            values[(i,)] = v
    return FieldRow(1, values)


def heat_profile(params: HeatParams, psi: FieldRow, j_max: int) -> list[FieldRow]:
    """Temperature rows 0..j_max from the profile psi, by direct iteration."""
    spec = heat_spec(params)
    return oracle_evolve(spec, InitialData((psi,)), j_max)
