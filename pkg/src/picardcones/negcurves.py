"""Diophantine enumeration of negative classes and Dynkin fiber recognition.

Enumeration is complete within a stated height bound: on a standard plane
blow-up basis the height of d*H - sum(m_i E_i) is |d| and a Cauchy-Schwarz
cutoff prunes degrees with no solutions, which certifies completeness for
del Pezzo lattices; on other lattices the height is the maximum absolute
coordinate and the search is an honest bounded box.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .lattice import (DivisorClass, IntersectionLattice, LatticeError,
                      arithmetic_genus, k_degree, pair, self_intersection)


@dataclass(frozen=True)
class CurveClass:
    """An integral class together with its numerical invariants and an
    effectivity certificate (geometric input, never derived here)."""

    cls: DivisorClass
    self_int: int
    k_deg: int
    genus: int
    effective_certified: bool = False
    label: str = ""

    def __post_init__(self):
        if not self.cls.is_integral():
            raise LatticeError("curve classes must be integral")
        if self_intersection(self.cls) != self.self_int:
            raise LatticeError("self-intersection mismatch")
        if k_degree(self.cls) != self.k_deg:
            raise LatticeError("canonical degree mismatch")
        if arithmetic_genus(self.cls) != self.genus:
            raise LatticeError("genus mismatch")

    def is_minus_one(self) -> bool:
        return self.self_int == -1 and self.k_deg == -1 and self.genus == 0

    def is_minus_two(self) -> bool:
        return self.self_int == -2 and self.k_deg == 0 and self.genus == 0


def curve(d: DivisorClass, certified: bool = False, label: str = "") -> CurveClass:
    return CurveClass(d, int(self_intersection(d)), int(k_degree(d)),
                      arithmetic_genus(d), certified, label)


def is_standard_blowup_basis(lattice: IntersectionLattice) -> bool:
    g = lattice.gram
    n = lattice.rank
    if g[0][0] != 1 or lattice.canonical[0] != -3:
        return False
    for i in range(n):
        for j in range(n):
            expected = 1 if i == j == 0 else (-1 if i == j else 0)
            if g[i][j] != expected:
                return False
    return all(c == 1 for c in lattice.canonical[1:])


def _multisets_with_sum_and_square(n: int, total: int, square: int, hi: int):
    """Non-increasing integer tuples of length n with given sum and sum of
    squares, entries bounded above by hi."""
    if n == 0:
        if total == 0 and square == 0:
            yield ()
        return
    if square < 0:
        return
    top = min(hi, isqrt(square))
    # all n entries are at most v, so v*n >= total
    lo = -(isqrt(square))
    for v in range(top, lo - 1, -1):
        if v * n < total:
            break
        rest_total = total - v
        rest_square = square - v * v
        if rest_square < 0:
            continue
        if n == 1:
            if rest_total == 0 and rest_square == 0:
                yield (v,)
            continue
        # Cauchy-Schwarz feasibility of the remaining n-1 entries
        if rest_total * rest_total > (n - 1) * rest_square:
            continue
        for tail in _multisets_with_sum_and_square(n - 1, rest_total, rest_square, v):
            yield (v,) + tail


def _unique_permutations(values: tuple[int, ...]):
    """All distinct orderings of a multiset, lexicographically descending."""
    counts: dict[int, int] = {}
    for v in values:
        counts[v] = counts.get(v, 0) + 1
    keys = sorted(counts, reverse=True)
    n = len(values)

    def rec(remaining: int):
        if remaining == 0:
            yield ()
            return
        for v in keys:
            if counts[v]:
                counts[v] -= 1
                for tail in rec(remaining - 1):
                    yield (v,) + tail
                counts[v] += 1

    yield from rec(n)


def _multiset_permutation_count(values: tuple[int, ...]) -> int:
    counts: dict[int, int] = {}
    for v in values:
        counts[v] = counts.get(v, 0) + 1
    total = 1
    for i in range(2, len(values) + 1):
        total *= i
    for c in counts.values():
        for i in range(2, c + 1):
            total //= i
    return total


def _blowup_multisets(lattice, self_int, target_k_deg, bound):
    """Per degree d, the exceptional-multiplicity multisets of solutions."""
    r = lattice.rank - 1
    for d in range(-bound, bound + 1):
        # D = d.H - sum(m_i E_i):  sum m_i = 3d + k,  sum m_i^2 = d^2 - s
        total = 3 * d + target_k_deg
        square = d * d - self_int
        if square < 0:
            continue
        if total * total > r * square:
            continue
        for ms in _multisets_with_sum_and_square(r, total, square, isqrt(square)):
            yield d, ms


def enumerate_classes(lattice: IntersectionLattice, target_self_int: int,
                      target_k_deg: int, height_bound: int) -> list[DivisorClass]:
    """All integral classes with the given square and canonical degree up to
    the height bound, in lexicographic coordinate order."""
    if height_bound < 1:
        raise LatticeError("height bound must be positive")
    found: list[tuple] = []
    if is_standard_blowup_basis(lattice):
        for d, ms in _blowup_multisets(lattice, target_self_int, target_k_deg,
                                       height_bound):
            for perm in _unique_permutations(ms):
                found.append((d,) + tuple(-m for m in perm))
    else:
        g = lattice.gram
        kvec = [sum(lattice.canonical[i] * g[i][j] for i in range(lattice.rank))
                for j in range(lattice.rank)]
        for coords in itertools.product(range(-height_bound, height_bound + 1),
                                        repeat=lattice.rank):
            sq = sum(coords[i] * g[i][j] * coords[j]
                     for i in range(lattice.rank) for j in range(lattice.rank))
            if sq != target_self_int:
                continue
            if sum(k * c for k, c in zip(kvec, coords)) != target_k_deg:
                continue
            found.append(coords)
    found.sort()
    return [lattice.divisor(c) for c in found]


def count_classes(lattice: IntersectionLattice, target_self_int: int,
                  target_k_deg: int, height_bound: int) -> int:
    """Number of classes enumerate_classes would return, computed without
    materializing them (multiset solutions weighted by permutation counts)."""
    if is_standard_blowup_basis(lattice):
        return sum(_multiset_permutation_count(ms)
                   for _, ms in _blowup_multisets(lattice, target_self_int,
                                                  target_k_deg, height_bound))
    return len(enumerate_classes(lattice, target_self_int, target_k_deg,
                                 height_bound))


def minus_one_classes(lattice, bound) -> list[DivisorClass]:
    return enumerate_classes(lattice, -1, -1, bound)


def minus_two_classes(lattice, bound) -> list[DivisorClass]:
    return enumerate_classes(lattice, -2, 0, bound)


# ---------------------------------------------------------------------------
# dual graphs of (-2)-configurations and (extended) Dynkin recognition


@dataclass(frozen=True)
class FiberComponentGraph:
    nodes: tuple[CurveClass, ...]
    # multigraph: weight of {i, j} is pair(C_i, C_j), only positive entries kept
    edges: tuple[tuple[int, int, int], ...]

    def adjacency(self) -> dict[int, list[tuple[int, int]]]:
        adj: dict[int, list[tuple[int, int]]] = {i: [] for i in range(len(self.nodes))}
        for i, j, w in self.edges:
            adj[i].append((j, w))
            adj[j].append((i, w))
        return adj

    def degrees(self) -> list[int]:
        deg = [0] * len(self.nodes)
        for i, j, w in self.edges:
            deg[i] += w
            deg[j] += w
        return deg

    def gram(self) -> list[list[int]]:
        n = len(self.nodes)
        m = [[0] * n for _ in range(n)]
        for i in range(n):
            m[i][i] = -2
        for i, j, w in self.edges:
            m[i][j] = m[j][i] = w
        return m


def dual_graph(classes: list[CurveClass]) -> FiberComponentGraph:
    for c in classes:
        if not c.is_minus_two():
            raise LatticeError(f"dual_graph expects (-2)-classes, got {c.cls!r}")
    edges = []
    for i in range(len(classes)):
        for j in range(i + 1, len(classes)):
            w = pair(classes[i].cls, classes[j].cls)
            if w < 0:
                raise LatticeError("distinct components cannot meet negatively")
            if w > 0:
                edges.append((i, j, int(w)))
    return FiberComponentGraph(tuple(classes), tuple(edges))


def connected_components(graph: FiberComponentGraph) -> list[FiberComponentGraph]:
    n = len(graph.nodes)
    adj = graph.adjacency()
    seen = [False] * n
    comps = []
    for start in range(n):
        if seen[start]:
            continue
        stack, comp = [start], []
        seen[start] = True
        while stack:
            v = stack.pop()
            comp.append(v)
            for w, _ in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comp.sort()
        relabel = {v: i for i, v in enumerate(comp)}
        edges = tuple((relabel[i], relabel[j], w) for i, j, w in graph.edges
                      if i in relabel and j in relabel)
        comps.append(FiberComponentGraph(tuple(graph.nodes[v] for v in comp), edges))
    return comps


@dataclass(frozen=True)
class DynkinType:
    series: str  # "A", "D" or "E"
    extended: bool
    rank: int

    def __str__(self):
        return f"{self.series}{'~' if self.extended else ''}{self.rank}"


def _arm_lengths(adj, center, n) -> list[int] | None:
    """Lengths of the simple paths leaving a trivalent node of a tree; None
    if any branch itself branches."""
    arms = []
    for first, _ in adj[center]:
        length = 1
        prev, cur = center, first
        while True:
            nbrs = [w for w, _ in adj[cur] if w != prev]
            if len(nbrs) == 0:
                break
            if len(nbrs) > 1:
                return None
            prev, cur = cur, nbrs[0]
            length += 1
        arms.append(length)
    return sorted(arms)


def dynkin_classify(component: FiberComponentGraph) -> DynkinType | None:
    """Recognize a connected (-2)-configuration as a finite or extended
    Dynkin diagram; None means the graph is no such diagram."""
    n = len(component.nodes)
    if n == 0:
        return None
    if len(connected_components(component)) != 1:
        raise LatticeError("dynkin_classify expects a connected graph")
    if n == 1:
        return DynkinType("A", False, 1) if not component.edges else None
    weights = [w for _, _, w in component.edges]
    if any(w > 2 for w in weights):
        return None
    if any(w == 2 for w in weights):
        # a doubled bond only occurs for the two-node extended A_1 fiber
        if n == 2 and len(component.edges) == 1:
            return DynkinType("A", True, 1)
        return None
    m = len(component.edges)
    adj = component.adjacency()
    deg = component.degrees()
    if m == n:
        if all(d == 2 for d in deg):
            return DynkinType("A", True, n - 1)
        return None
    if m != n - 1:
        return None
    # tree cases
    branchpoints = [v for v in range(n) if deg[v] >= 3]
    if not branchpoints:
        return DynkinType("A", False, n)
    if len(branchpoints) == 1:
        c = branchpoints[0]
        if deg[c] == 4:
            if n == 5 and all(deg[v] == 1 for v in range(n) if v != c):
                return DynkinType("D", True, 4)
            return None
        if deg[c] > 4:
            return None
        arms = _arm_lengths(adj, c, n)
        if arms is None:
            return None
        a, b, cc = arms
        if (a, b) == (1, 1):
            return DynkinType("D", False, n)
        if arms == [1, 2, 2]:
            return DynkinType("E", False, 6)
        if arms == [1, 2, 3]:
            return DynkinType("E", False, 7)
        if arms == [1, 2, 4]:
            return DynkinType("E", False, 8)
        if arms == [2, 2, 2]:
            return DynkinType("E", True, 6)
        if arms == [1, 3, 3]:
            return DynkinType("E", True, 7)
        if arms == [1, 2, 5]:
            return DynkinType("E", True, 8)
        return None
    if len(branchpoints) == 2:
        v, w = branchpoints
        if deg[v] != 3 or deg[w] != 3:
            return None
        # extended D: both forks carry two genuine leaves
        for bp in (v, w):
            leaves = sum(1 for u, _ in adj[bp] if deg[u] == 1)
            if leaves != 2:
                return None
        return DynkinType("D", True, n - 1)
    return None


def fiber_rank_sum(classes: list[CurveClass]) -> int:
    """Sum of the extended-Dynkin ranks over connected components; raises if
    any component is not an extended diagram."""
    if not classes:
        return 0
    total = 0
    for comp in connected_components(dual_graph(classes)):
        t = dynkin_classify(comp)
        if t is None or not t.extended:
            raise LatticeError("fiber components do not form extended Dynkin diagrams")
        total += t.rank
    return total
