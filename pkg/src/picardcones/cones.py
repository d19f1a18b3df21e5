"""Rational polyhedral cones in a Picard lattice.

Duality is always taken with respect to the intersection pairing, never the
coordinate dot product.  Cone duals are computed by an incremental double
description method over exact rationals (with explicit lineality tracking),
membership by exact phase-one simplex, and every ray is normalized to its
primitive integral representative so results compare exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import isqrt

from . import linalg
from .lattice import (DivisorClass, IntersectionLattice, LatticeError, pair,
                      self_intersection)
from .linalg import Vec
from .negcurves import is_standard_blowup_basis


class ConeError(ValueError):
    pass


def _dedupe_primitive(vectors) -> list[tuple[int, ...]]:
    seen = []
    out = []
    for v in vectors:
        if linalg.is_zero(v):
            continue
        p = linalg.primitive_integer_vector(v)
        if p not in seen:
            seen.append(p)
            out.append(p)
    return out


def halfspace_rays(normals, dim: int) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """V-description of {x : a.x >= 0 for all a} by double description.

    Returns (extremal rays, lineality basis), both primitive integral.
    """
    norm_list = [linalg.vec(a) for a in normals if not linalg.is_zero(a)]
    lin: list[Vec] = [tuple(Fraction(int(i == j)) for j in range(dim))
                      for i in range(dim)]
    rays: list[Vec] = []
    processed: list[Vec] = []

    def active(r) -> frozenset[int]:
        return frozenset(i for i, a in enumerate(processed)
                         if linalg.dot(a, r) == 0)

    for a in norm_list:
        lin_vals = [linalg.dot(a, b) for b in lin]
        pivot = next((i for i, v in enumerate(lin_vals) if v != 0), None)
        if pivot is not None:
            b0, v0 = lin[pivot], lin_vals[pivot]
            lin = [linalg.sub(b, linalg.scale(linalg.dot(a, b) / v0, b0))
                   for i, b in enumerate(lin) if i != pivot]
            rays = [linalg.sub(r, linalg.scale(linalg.dot(a, r) / v0, b0))
                    for r in rays]
            r0 = b0 if v0 > 0 else linalg.scale(-1, b0)
            rays = [linalg.vec(linalg.primitive_integer_vector(r))
                    if not linalg.is_zero(r) else r for r in rays]
            rays = [r for r in rays if not linalg.is_zero(r)]
            rays.append(linalg.vec(linalg.primitive_integer_vector(r0)))
        else:
            vals = [linalg.dot(a, r) for r in rays]
            plus = [r for r, v in zip(rays, vals) if v > 0]
            zero = [r for r, v in zip(rays, vals) if v == 0]
            minus = [r for r, v in zip(rays, vals) if v < 0]
            if minus:
                act = {id(r): active(r) for r in rays}
                new_rays = plus + zero
                for p, m in itertools.product(plus, minus):
                    common = act[id(p)] & act[id(m)]
                    adjacent = True
                    for r in rays:
                        if r is p or r is m:
                            continue
                        if common <= act[id(r)]:
                            adjacent = False
                            break
                    if adjacent:
                        combo = linalg.sub(linalg.scale(linalg.dot(a, p), m),
                                           linalg.scale(linalg.dot(a, m), p))
                        new_rays.append(
                            linalg.vec(linalg.primitive_integer_vector(combo)))
                rays = new_rays
        processed.append(a)

    prim_rays = _dedupe_primitive(rays)
    prim_lin = _dedupe_primitive(lin)
    return sorted(prim_rays), sorted(prim_lin)


@dataclass(frozen=True)
class RationalCone:
    """Finitely generated convex cone of rational rays in a lattice."""

    lattice: IntersectionLattice
    generators: tuple[Vec, ...]

    def __post_init__(self):
        gens = tuple(linalg.vec(g) for g in self.generators)
        for g in gens:
            if len(g) != self.lattice.rank:
                raise ConeError("generator length does not match lattice rank")
            if linalg.is_zero(g):
                raise ConeError("zero vector cannot generate a ray")
        object.__setattr__(self, "generators", gens)

    @classmethod
    def from_classes(cls, lattice: IntersectionLattice, classes) -> "RationalCone":
        return cls(lattice, tuple(d.coords for d in classes))

    def generator_classes(self) -> list[DivisorClass]:
        return [self.lattice.divisor(g) for g in self.generators]

    @cached_property
    def canonical_rays(self) -> tuple[tuple[int, ...], ...]:
        """Minimal generating set, primitive integral, lexicographic."""
        prim = _dedupe_primitive(self.generators)
        keep = []
        for i, g in enumerate(prim):
            others = [linalg.vec(h) for j, h in enumerate(prim) if j != i]
            if not others:
                keep.append(g)
                continue
            if linalg.solve_nonneg_combination(others, linalg.vec(g)) is None:
                keep.append(g)
        return tuple(sorted(keep))

    def extremal_ray_classes(self) -> list[DivisorClass]:
        return [self.lattice.divisor(r) for r in self.canonical_rays]

    def contains(self, d: DivisorClass) -> bool:
        """Exact feasibility of D = sum(lambda_i g_i), lambda_i >= 0."""
        if d.lattice != self.lattice:
            raise ConeError("class and cone live in different lattices")
        cols = [linalg.vec(g) for g in self.generators]
        return linalg.solve_nonneg_combination(cols, d.coords) is not None

    @cached_property
    def dual_pairing_vectors(self) -> tuple[tuple[int, ...], ...]:
        """Integer vectors v with:  D in cone  <=>  v . coords(D) >= 0 for all v.

        These are the intersection products with the dual cone's generators;
        double description makes the list finite and exact.
        """
        dual = dual_cone(self)
        g = self.lattice.gram
        out = []
        for ray in dual.generators:
            v = tuple(sum(g[i][j] * ray[i] for i in range(self.lattice.rank))
                      for j in range(self.lattice.rank))
            out.append(linalg.primitive_integer_vector(v))
        return tuple(sorted(set(out)))


def dual_cone(c: RationalCone) -> RationalCone:
    """{D : D.g >= 0 for every generator g}, duality w.r.t. the Gram pairing."""
    lat = c.lattice
    if linalg.det(lat.gram) == 0:
        raise ConeError("dual cone needs a nondegenerate intersection form")
    normals = []
    for g in c.generators:
        normals.append(tuple(sum(Fraction(lat.gram[i][j]) * g[i]
                                 for i in range(lat.rank))
                             for j in range(lat.rank)))
    rays, lin = halfspace_rays(normals, lat.rank)
    gens = [linalg.vec(r) for r in rays]
    for b in lin:
        gens.append(linalg.vec(b))
        gens.append(linalg.vec(tuple(-x for x in b)))
    if not gens:
        raise ConeError("dual cone is trivial; input generators span everything")
    dual = RationalCone(lat, tuple(gens))
    if not lin:
        # double description output is already irredundant
        dual.__dict__["canonical_rays"] = tuple(sorted(rays))
    return dual


def extremal_rays(c: RationalCone) -> list[DivisorClass]:
    return c.extremal_ray_classes()


def inclusion_chain_check(eff: RationalCone, nef: RationalCone) -> bool:
    """Every extremal nef ray must be effective (Nef inside Eff)."""
    if eff.lattice != nef.lattice:
        raise ConeError("cones live in different lattices")
    return all(eff.contains(nef.lattice.divisor(r)) for r in nef.canonical_rays)


# ---------------------------------------------------------------------------
# sampled verification that the light half-cone sits inside the cone of
# negative curves


def light_halfcone_samples(lattice: IntersectionLattice, ample: DivisorClass,
                           height_bound: int) -> list[tuple[int, ...]]:
    """Integral classes with every |coordinate| <= bound, D.D >= 0 and
    D.ample > 0, in deterministic order."""
    n = lattice.rank
    qa = linalg.matvec(linalg.mat(lattice.gram), ample.coords)
    qa_int = linalg.primitive_integer_vector(qa)
    out: list[tuple[int, ...]] = []
    if is_standard_blowup_basis(lattice):

        def ball(prefix, remaining, budget, acc):
            if remaining == 0:
                acc.append(prefix)
                return
            top = isqrt(budget)
            for v in range(-top, top + 1):
                ball(prefix + (v,), remaining - 1, budget - v * v, acc)

        for c0 in range(-height_bound, height_bound + 1):
            if c0 == 0:
                continue
            # D.D >= 0 pins the exceptional part inside a ball of radius |c0|
            acc: list[tuple[int, ...]] = []
            ball((c0,), n - 1, c0 * c0, acc)
            for coords in acc:
                if sum(a * b for a, b in zip(qa_int, coords)) > 0:
                    out.append(coords)
    else:
        g = lattice.gram
        for coords in itertools.product(range(-height_bound, height_bound + 1),
                                        repeat=n):
            sq = sum(coords[i] * g[i][j] * coords[j]
                     for i in range(n) for j in range(n))
            if sq < 0:
                continue
            if sum(a * b for a, b in zip(qa_int, coords)) <= 0:
                continue
            out.append(coords)
    out.sort()
    return out


def effc_sample_check(lattice: IntersectionLattice, negative_rays,
                      ample: DivisorClass, height_bound: int,
                      samples: list[tuple[int, ...]] | None = None) -> bool:
    """Bounded check that the ample half of the light cone lies in the cone
    spanned by the given negative rays.  A verification up to the bound, not
    a proof."""
    if lattice.rank < 3:
        raise ConeError("the light-cone comparison needs rank at least 3")
    pos, neg, zero = linalg.signature(lattice.gram)
    if (pos, zero) != (1, 0):
        raise ConeError("lattice is not hyperbolic")
    ray_classes = list(negative_rays)
    for r in ray_classes:
        if self_intersection(r) >= 0:
            raise ConeError("negative_rays must have negative self-intersection")
    if self_intersection(ample) <= 0 or any(pair(ample, r) <= 0 for r in ray_classes):
        raise ConeError("reference class is not positive on the given rays")
    cone = RationalCone.from_classes(lattice, ray_classes)
    checks = cone.dual_pairing_vectors
    if samples is None:
        samples = light_halfcone_samples(lattice, ample, height_bound)
    if not samples:
        return True
    return _all_nonneg_products(samples, checks)


def _all_nonneg_products(samples, checks) -> bool:
    max_s = max(max(abs(x) for x in s) for s in samples)
    max_c = max(max(abs(x) for x in c) for c in checks)
    n = len(samples[0])
    if max_s * max_c * n < 2 ** 62:
        import numpy as np

        s = np.array(samples, dtype=np.int64)
        c = np.array(checks, dtype=np.int64)
        return bool((s @ c.T >= 0).all())
    for s in samples:
        for c in checks:
            if sum(a * b for a, b in zip(s, c)) < 0:
                return False
    return True


def effc_violations(lattice, negative_rays, ample, height_bound,
                    limit: int = 5) -> list[tuple[int, ...]]:
    """Light-cone classes within the bound that escape the ray cone."""
    cone = RationalCone.from_classes(lattice, list(negative_rays))
    checks = cone.dual_pairing_vectors
    bad = []
    for s in light_halfcone_samples(lattice, ample, height_bound):
        if any(sum(a * b for a, b in zip(s, c)) < 0 for c in checks):
            bad.append(s)
            if len(bad) >= limit:
                break
    return bad
