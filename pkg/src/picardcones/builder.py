"""Construction of the standard surface lattices.

Plane blow-ups (with infinitely-near centers recorded purely by proximity),
Hirzebruch surfaces, the blown-up quartic, and the iterated blow-up tower
along a multiple point of an elliptic fiber.  Infinitely-near points carry
no coordinates: which exceptional branches a new center sits on is all the
lattice ever sees.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .lattice import DivisorClass, IntersectionLattice, LatticeError


@dataclass(frozen=True)
class General:
    pass


@dataclass(frozen=True)
class OnExceptional:
    j: int


@dataclass(frozen=True)
class OnTwoExceptionals:
    j: int
    k: int


Center = General | OnExceptional | OnTwoExceptionals


@dataclass(frozen=True)
class BlowupSpec:
    """Base surface plus an ordered list of (possibly infinitely near) centers."""

    base: str  # "plane" | "hirzebruch" | "quartic_k3"
    centers: tuple[Center, ...] = ()
    hirzebruch_n: int = 0

    def __post_init__(self):
        if self.base not in ("plane", "hirzebruch", "quartic_k3"):
            raise LatticeError(f"unknown base surface {self.base!r}")
        if self.base == "hirzebruch" and self.hirzebruch_n < 0:
            raise LatticeError("hirzebruch index must be non-negative")
        for i, c in enumerate(self.centers):
            if isinstance(c, OnExceptional):
                if not 0 <= c.j < i:
                    raise LatticeError(f"center {i} refers to non-earlier center {c.j}")
            elif isinstance(c, OnTwoExceptionals):
                if c.j == c.k:
                    raise LatticeError(f"center {i} lists the same exceptional twice")
                if not (0 <= c.j < i and 0 <= c.k < i):
                    raise LatticeError(f"center {i} refers to non-earlier centers")
            elif not isinstance(c, General):
                raise LatticeError(f"center {i} has unknown kind {c!r}")
        if self.base == "quartic_k3" and len(self.centers) > 1:
            raise LatticeError("the quartic construction blows up at most one point")

    @property
    def base_rank(self) -> int:
        return 2 if self.base == "hirzebruch" else 1


def proximity_matrix(spec: BlowupSpec) -> tuple[tuple[int, ...], ...]:
    """0/1 lower-triangular matrix; entry (i,j)=1 iff center i is proximate to j."""
    n = len(spec.centers)
    rows = [[0] * n for _ in range(n)]
    for i, c in enumerate(spec.centers):
        if isinstance(c, OnExceptional):
            rows[i][c.j] = 1
        elif isinstance(c, OnTwoExceptionals):
            rows[i][c.j] = 1
            rows[i][c.k] = 1
    # a point sits on at most two exceptional branches in this construction
    assert all(sum(row) <= 2 for row in rows)
    return tuple(tuple(row) for row in rows)


def build_lattice(spec: BlowupSpec) -> tuple[IntersectionLattice, tuple[str, ...]]:
    r = len(spec.centers)
    if spec.base == "plane":
        labels = ("H",) + tuple(f"E{i + 1}" for i in range(r))
        gram = [[0] * (r + 1) for _ in range(r + 1)]
        gram[0][0] = 1
        for i in range(1, r + 1):
            gram[i][i] = -1
        canonical = (-3,) + (1,) * r
        lat = IntersectionLattice(r + 1, tuple(map(tuple, gram)), canonical)
        return lat, labels
    if spec.base == "hirzebruch":
        n = spec.hirzebruch_n
        labels = ("f", "s") + tuple(f"E{i + 1}" for i in range(r))
        gram = [[0] * (r + 2) for _ in range(r + 2)]
        gram[0][1] = gram[1][0] = 1
        gram[1][1] = -n
        for i in range(2, r + 2):
            gram[i][i] = -1
        canonical = (-(n + 2), -2) + (1,) * r
        lat = IntersectionLattice(r + 2, tuple(map(tuple, gram)), canonical)
        return lat, labels
    # quartic_k3: hyperplane class of square 4, trivial canonical before blow-up
    labels = ("H",) + tuple(f"E{i + 1}" for i in range(r))
    gram = [[0] * (r + 1) for _ in range(r + 1)]
    gram[0][0] = 4
    for i in range(1, r + 1):
        gram[i][i] = -1
    canonical = (0,) + (1,) * r
    lat = IntersectionLattice(r + 1, tuple(map(tuple, gram)), canonical,
                              rational_surface=False)
    return lat, labels


def _exceptional_index(spec: BlowupSpec, i: int) -> int:
    if not 0 <= i < len(spec.centers):
        raise LatticeError(f"center index {i} out of range")
    return spec.base_rank + i


def total_exceptional(spec: BlowupSpec, i: int) -> DivisorClass:
    """Total transform of the i-th exceptional divisor (a basis vector)."""
    lat, _ = build_lattice(spec)
    coords = [0] * lat.rank
    coords[_exceptional_index(spec, i)] = 1
    return lat.divisor(coords)


def strict_exceptional(spec: BlowupSpec, i: int) -> DivisorClass:
    """Strict transform E_i minus the exceptionals of all proximate later centers."""
    lat, _ = build_lattice(spec)
    coords = [0] * lat.rank
    coords[_exceptional_index(spec, i)] = 1
    prox = proximity_matrix(spec)
    for j in range(len(spec.centers)):
        if prox[j][i]:
            coords[_exceptional_index(spec, j)] -= 1
    return lat.divisor(coords)


def pullback(d: DivisorClass, target: IntersectionLattice) -> DivisorClass:
    """Extend a base class by zeros on the exceptional part of a blow-up lattice.

    The target lattice must contain the base Gram matrix as its leading
    block; pullback is then an isometric embedding.
    """
    base_rank = d.lattice.rank
    if target.rank < base_rank:
        raise LatticeError("target lattice is smaller than the base")
    for i in range(base_rank):
        for j in range(base_rank):
            if target.gram[i][j] != d.lattice.gram[i][j]:
                raise LatticeError("target lattice does not extend the base Gram matrix")
    coords = tuple(d.coords) + (Fraction(0),) * (target.rank - base_rank)
    return DivisorClass(coords, target)


# ---------------------------------------------------------------------------
# the blow-up tower along a multiple point of a degenerate elliptic fiber


HESSE_TRIANGLES: tuple[tuple[tuple[int, ...], ...], ...] = tuple(
    tuple(tuple(1 + 3 * a + b for (a, b) in line) for line in triangle)
    for triangle in (
        # points of F_3 x F_3; the four directions give the four triangles
        tuple(tuple((a, b) for b in range(3)) for a in range(3)),
        tuple(tuple((a, c) for a in range(3)) for c in range(3)),
        tuple(tuple((a, (c + a) % 3) for a in range(3)) for c in range(3)),
        tuple(tuple((a, (c + 2 * a) % 3) for a in range(3)) for c in range(3)),
    )
)


@dataclass(frozen=True)
class TowerCurve:
    label: str
    coords: tuple[int, ...]
    fiber_multiplicity: int  # 0 for curves not contained in the blown-up fiber


@dataclass(frozen=True)
class TowerSurface:
    """Blow-up tower above a triple point (or node) of a degenerate fiber.

    ``curves`` lists the integral negative curves certified by the
    construction: the sections, every fiber component, and the tower
    exceptionals.  ``fiber_class`` is the pullback of the fiber, and
    ``multiplicities`` records the fiber multiplicity at each tower center.
    """

    variant: str
    depth: int
    lattice: IntersectionLattice
    labels: tuple[str, ...]
    curves: tuple[TowerCurve, ...]
    fiber_class: tuple[int, ...]
    multiplicities: tuple[int, ...]
    spec: BlowupSpec

    def curve_classes(self) -> list[DivisorClass]:
        return [self.lattice.divisor(c.coords) for c in self.curves]


def _line_class(rank: int, points: tuple[int, ...]) -> list[int]:
    coords = [0] * rank
    coords[0] = 1
    for p in points:
        coords[p] = -1
    return coords


def build_tower_surface(variant: str, depth: int) -> TowerSurface:
    """Iterated blow-up above a fiber singularity, tracked at class level.

    variant "triple": the base carries a fiber made of three concurrent
    lines and the first center is the triple point (multiplicity 3).
    variant "node": the base is the four-triangle pencil and the first
    center is a vertex of one triangle (multiplicity 2).

    Each later center sits on the last exceptional and on the strict
    transform of the previous one, so the fiber multiplicities follow the
    Fibonacci-style recursion a_i = a_{i-1} + a_{i-2}.
    """
    if variant not in ("triple", "node"):
        raise LatticeError(f"unknown tower variant {variant!r}")
    if depth < 0:
        raise LatticeError("depth must be non-negative")
    base_rank = 10

    curves: list[dict] = []
    if variant == "triple":
        # three concurrent lines through the triple point, three pencil
        # base points on each
        for i in range(3):
            pts = tuple(range(1 + 3 * i, 4 + 3 * i))
            curves.append({"label": f"L{i + 1}",
                           "coords": _line_class(base_rank, pts), "fm": 1})
        through_first = {"L1", "L2", "L3"}
        next_on_fiber = "L1"
    else:
        for t, triangle in enumerate(HESSE_TRIANGLES):
            for l, pts in enumerate(triangle):
                curves.append({"label": f"T{t + 1}L{l + 1}",
                               "coords": _line_class(base_rank, pts),
                               "fm": 1 if t == 0 else 0})
        # a node of the first triangle: the point where its first two lines meet
        through_first = {"T1L1", "T1L2"}
        next_on_fiber = "T1L1"
    for i in range(9):
        coords = [0] * base_rank
        coords[i + 1] = 1
        curves.append({"label": f"E{i + 1}", "coords": coords, "fm": 0})

    centers: list[Center] = []
    mults: list[int] = []
    on_center = set(through_first)
    prev_label: str | None = None
    for step in range(depth):
        # center indices inside the full spec are offset by the nine base points
        if step == 0:
            centers.append(General())
        elif step == 1:
            centers.append(OnExceptional(9))
        else:
            centers.append(OnTwoExceptionals(9 + step - 1, 9 + step - 2))
        by_label = {c["label"]: c for c in curves}
        a_i = sum(by_label[lb]["fm"] for lb in on_center)
        mults.append(a_i)
        # blow up: one more basis vector, curves through the center drop by it
        for c in curves:
            c["coords"] = c["coords"] + [-1 if c["label"] in on_center else 0]
        exc_label = f"F{step}"
        exc = {"label": exc_label, "coords": [0] * (base_rank + step) + [1],
               "fm": a_i, "through": False}
        curves.append(exc)
        # next center: on the new exceptional and on the strict transform of
        # the previous one (at step 0 the fiber component takes that role)
        on_center = {exc_label, next_on_fiber if step == 0 else prev_label}
        prev_label = exc_label

    spec = BlowupSpec(base="plane",
                      centers=tuple([General()] * 9) + tuple(centers))
    lattice, labels = build_lattice(spec)
    lattice = IntersectionLattice(lattice.rank, lattice.gram, lattice.canonical,
                                  name=f"tower-{variant}-depth{depth}")
    tower_curves = tuple(
        TowerCurve(c["label"], tuple(c["coords"]), c["fm"]) for c in curves)
    fiber = [3] + [-1] * 9 + [0] * depth
    ts = TowerSurface(variant=variant, depth=depth, lattice=lattice,
                      labels=labels, curves=tower_curves,
                      fiber_class=tuple(fiber), multiplicities=tuple(mults),
                      spec=spec)
    _check_tower(ts)
    return ts


def _check_tower(ts: TowerSurface):
    # the fiber class must equal the multiplicity-weighted sum of its components
    fiber = [Fraction(0)] * ts.lattice.rank
    for c in ts.curves:
        if c.fiber_multiplicity:
            for i, x in enumerate(c.coords):
                fiber[i] += c.fiber_multiplicity * x
    if tuple(fiber) != tuple(map(Fraction, ts.fiber_class)):
        raise LatticeError("tower bookkeeping lost the fiber class")
