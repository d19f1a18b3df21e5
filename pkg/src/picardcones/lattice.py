"""Intersection-form arithmetic on surface Picard lattices.

An :class:`IntersectionLattice` is a free abelian group of finite rank with
a symmetric integer pairing (the Gram matrix on a fixed basis) and a
distinguished canonical class.  Divisor classes are rational coordinate
vectors in such a lattice; Zariski positive/negative parts are genuinely
rational, so integrality is not required of a class.

All operations are pure functions of immutable values and safe to call
concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .linalg import Vec


class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class IntersectionLattice:
    """Rank, Gram matrix, canonical class and a couple of semantic flags.

    Invariants enforced on construction:

    * the Gram matrix is symmetric;
    * gram(e,e) + K.e is even for every basis vector e (adjunction parity);
    * when ``hyperbolic_required`` the signature is (1, rank-1), decided by
      exact congruence diagonalization.
    """

    rank: int
    gram: tuple[tuple[int, ...], ...]
    canonical: tuple[int, ...]
    hyperbolic_required: bool = True
    rational_surface: bool = True
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.rank < 1:
            raise LatticeError("rank must be positive")
        g = tuple(tuple(int(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", g)
        object.__setattr__(self, "canonical", tuple(int(x) for x in self.canonical))
        if len(g) != self.rank or any(len(row) != self.rank for row in g):
            raise LatticeError("gram matrix shape does not match rank")
        if len(self.canonical) != self.rank:
            raise LatticeError("canonical class length does not match rank")
        for i in range(self.rank):
            for j in range(self.rank):
                if g[i][j] != g[j][i]:
                    raise LatticeError("gram matrix is not symmetric")
        for i in range(self.rank):
            ke = sum(self.canonical[j] * g[j][i] for j in range(self.rank))
            if (g[i][i] + ke) % 2 != 0:
                raise LatticeError(
                    f"parity violation at basis vector {i}: e.e + K.e is odd")
        if self.hyperbolic_required:
            pos, neg, zero = linalg.signature(g)
            if (pos, neg, zero) != (1, self.rank - 1, 0):
                raise LatticeError(
                    f"signature {(pos, neg, zero)} is not hyperbolic (1, {self.rank - 1})")

    def divisor(self, coords) -> "DivisorClass":
        return DivisorClass(linalg.vec(coords), self)

    @property
    def k(self) -> "DivisorClass":
        return self.divisor(self.canonical)

    @property
    def minus_k(self) -> "DivisorClass":
        return self.divisor([-c for c in self.canonical])

    @property
    def zero(self) -> "DivisorClass":
        return self.divisor([0] * self.rank)


@dataclass(frozen=True)
class DivisorClass:
    coords: Vec
    lattice: IntersectionLattice

    def __post_init__(self):
        object.__setattr__(self, "coords", linalg.vec(self.coords))
        if len(self.coords) != self.lattice.rank:
            raise LatticeError("coordinate length does not match lattice rank")

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def is_zero(self) -> bool:
        return linalg.is_zero(self.coords)

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        _require_same_lattice(self, other)
        return DivisorClass(linalg.add(self.coords, other.coords), self.lattice)

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        _require_same_lattice(self, other)
        return DivisorClass(linalg.sub(self.coords, other.coords), self.lattice)

    def __mul__(self, c) -> "DivisorClass":
        return DivisorClass(linalg.scale(Fraction(c), self.coords), self.lattice)

    __rmul__ = __mul__

    def __neg__(self) -> "DivisorClass":
        return self * -1

    def __repr__(self):
        parts = ",".join(str(c) for c in self.coords)
        return f"Div({parts})"


def _require_same_lattice(d1: DivisorClass, d2: DivisorClass):
    if d1.lattice != d2.lattice:
        raise LatticeError("divisor classes live in different lattices")


def pair(d1: DivisorClass, d2: DivisorClass) -> Fraction:
    """Intersection number coords1^T . gram . coords2, exact."""
    _require_same_lattice(d1, d2)
    g = d1.lattice.gram
    total = Fraction(0)
    for i, a in enumerate(d1.coords):
        if a == 0:
            continue
        row = g[i]
        total += a * sum((b * row[j] for j, b in enumerate(d2.coords) if b != 0),
                         Fraction(0))
    return total


def self_intersection(d: DivisorClass) -> Fraction:
    return pair(d, d)


def k_degree(d: DivisorClass) -> Fraction:
    """Pairing with the canonical class."""
    return pair(d.lattice.k, d)


def arithmetic_genus(d: DivisorClass) -> int:
    """Genus from adjunction, p_a = 1 + (D.D + D.K)/2.  Integral classes only."""
    if not d.is_integral():
        raise LatticeError("arithmetic genus needs an integral class")
    val = 1 + Fraction(self_intersection(d) + k_degree(d), 2)
    assert val.denominator == 1, "parity invariant guarantees integrality"
    return int(val)


def rr_chi(d: DivisorClass) -> Fraction:
    """Riemann-Roch characteristic 1 + (D.D - D.K)/2 on a rational surface."""
    if not d.lattice.rational_surface:
        raise LatticeError("rr_chi requires the rational_surface flag")
    return 1 + Fraction(self_intersection(d) - k_degree(d), 2)


def in_light_halfcone(d: DivisorClass, ample: DivisorClass) -> bool:
    """Whether D lies in the half light cone singled out by an ample class.

    True iff D.D >= 0 and D.ample > 0; the zero class is excluded by
    convention.
    """
    _require_same_lattice(d, ample)
    if self_intersection(ample) <= 0:
        raise LatticeError("reference class must have positive self-intersection")
    if d.is_zero():
        return False
    return self_intersection(d) >= 0 and pair(d, ample) > 0


def primitive_generator(m: DivisorClass) -> tuple[Fraction, DivisorClass]:
    """Write an isotropic class M as a.D with D primitive integral, a > 0 rational."""
    if m.is_zero():
        raise LatticeError("zero class has no primitive generator")
    if self_intersection(m) != 0:
        raise LatticeError("primitive_generator expects a class of square zero")
    prim = linalg.primitive_integer_vector(m.coords)
    # a is the common ratio of coordinates
    idx = next(i for i, c in enumerate(prim) if c != 0)
    a = m.coords[idx] / prim[idx]
    if a < 0:
        prim = tuple(-x for x in prim)
        a = -a
    return a, DivisorClass(linalg.vec(prim), m.lattice)
