"""Arithmetic of the blow-up tower above a multiple point of a fiber.

The fiber multiplicities a_i at consecutive infinitely-near centers follow
a_{i+1} = a_i + a_{i-1}; the multiplicity ratios b and the derived
quantities mu and the running positive-part coefficient are kept as exact
rationals.  Everything here is O(1) per step; the geometric counterpart
lives in :mod:`picardcones.builder`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

TRIPLE_POINT = "triple"
NODE = "node"

# fiber multiplicity lower bound claimed for every step, and the ratio lower
# bound claimed for steps after the fourth
MU_LOWER = Fraction(8, 3)
B_LOWER = Fraction(8, 5)


@dataclass(frozen=True)
class TowerState:
    """State after step ``i``: multiplicities (a_i, a_{i+1}), their ratio,
    mu_i, and the running product prod_{k<=i}(1 - 1/mu_k)."""

    i: int
    a_prev: int
    a_cur: int
    b_cur: Fraction
    mu_cur: Fraction
    coeff: Fraction

    def __post_init__(self):
        assert self.b_cur == Fraction(self.a_cur, self.a_prev)


def tower_init(variant: str = TRIPLE_POINT) -> TowerState:
    if variant == TRIPLE_POINT:
        a0, a1, mu0 = 3, 4, Fraction(3)
    elif variant == NODE:
        a0, a1, mu0 = 2, 3, Fraction(2)
    else:
        raise ValueError(f"unknown tower variant {variant!r}")
    return TowerState(i=0, a_prev=a0, a_cur=a1, b_cur=Fraction(a1, a0),
                      mu_cur=mu0, coeff=1 - 1 / mu0)


def tower_step(s: TowerState) -> TowerState:
    a_next = s.a_cur + s.a_prev
    mu_next = (s.mu_cur - 1) * s.b_cur
    if mu_next == 0:
        raise ZeroDivisionError("mu reached 0; coefficient product undefined")
    return TowerState(i=s.i + 1, a_prev=s.a_cur, a_cur=a_next,
                      b_cur=Fraction(a_next, s.a_cur), mu_cur=mu_next,
                      coeff=s.coeff * (1 - 1 / mu_next))


def tower_states(variant: str, steps: int) -> list[TowerState]:
    s = tower_init(variant)
    out = [s]
    for _ in range(steps):
        s = tower_step(s)
        out.append(s)
    return out


def mui_consistency(s: TowerState) -> bool:
    """The two formulas for mu_i agree:  mu_i = prod_{k<i}(1-1/mu_k) * a_i."""
    if s.mu_cur == 1:
        return False
    coeff_before = s.coeff / (1 - 1 / s.mu_cur)
    return s.mu_cur == coeff_before * s.a_prev


def kappa_persists(s: TowerState) -> bool:
    """Strictly positive fiber multiplicity excess keeps kappa(-K) = 1."""
    return s.mu_cur > 1


@dataclass(frozen=True)
class BoundsReport:
    steps: int
    variant: str
    b_violations: tuple[tuple[int, Fraction], ...]
    mu_violations: tuple[tuple[int, Fraction], ...]

    @property
    def ok(self) -> bool:
        return not self.b_violations and not self.mu_violations


def bounds_check(steps: int, variant: str = TRIPLE_POINT) -> BoundsReport:
    """Verify b_i > 8/5 for i > 4 and mu_i >= 8/3 for all i <= steps.

    The mu bound is met with equality exactly once on the triple-point
    tower, at step 1 where mu = 8/3; the comparison is therefore >=, not
    strict.
    """
    if steps < 1:
        raise ValueError("steps must be at least 1")
    b_bad = []
    mu_bad = []
    for s in tower_states(variant, steps):
        if s.i > 4 and not s.b_cur > B_LOWER:
            b_bad.append((s.i, s.b_cur))
        if not s.mu_cur >= MU_LOWER:
            mu_bad.append((s.i, s.mu_cur))
    return BoundsReport(steps=steps, variant=variant,
                        b_violations=tuple(b_bad), mu_violations=tuple(mu_bad))
