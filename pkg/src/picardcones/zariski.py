"""Exact Zariski decomposition against a finite candidate curve set.

The classical support-growth iteration: seed the support with the curves the
class meets negatively, solve the orthogonality system exactly over Q,
enlarge the support with any candidate the remainder still meets negatively,
and repeat.  Negative definiteness of the support Gram is re-verified on
every expansion, so inconsistent curve data fails fast.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .cones import RationalCone
from .lattice import DivisorClass, IntersectionLattice, pair, self_intersection
from .negcurves import CurveClass


class ZariskiError(ValueError):
    pass


class SingularSupportGram(ZariskiError):
    """The accumulated support is not negative definite: invalid curve data."""


class NotPseudoeffective(ZariskiError):
    """The class fails the effective-cone membership pre-check."""


class NonConvergent(ZariskiError):
    """The candidate list cannot produce a valid decomposition."""


@dataclass(frozen=True)
class ZariskiDecomposition:
    positive: DivisorClass
    negative_support: tuple[tuple[CurveClass, Fraction], ...]

    @property
    def negative(self) -> DivisorClass:
        n = self.positive.lattice.zero
        for c, x in self.negative_support:
            n = n + x * c.cls
        return n

    def coefficient_of(self, label: str) -> Fraction | None:
        for c, x in self.negative_support:
            if c.label == label:
                return x
        return None


def zariski_decompose(d: DivisorClass, candidates: list[CurveClass],
                      eff_cone: RationalCone | None = None) -> ZariskiDecomposition:
    """Unique decomposition D = P + N with P nef against the candidates,
    P orthogonal to the support of N, and negative definite support Gram.

    When an effective cone is supplied (polyhedral corpus data) membership
    is checked first; otherwise NonConvergent is the honest failure mode for
    classes the candidate list cannot handle.
    """
    lattice = d.lattice
    for c in candidates:
        if c.cls.lattice != lattice:
            raise ZariskiError("candidate curve in a different lattice")
    if eff_cone is not None and not eff_cone.contains(d):
        raise NotPseudoeffective(f"{d!r} is outside the effective cone")

    support: list[int] = [i for i, c in enumerate(candidates)
                          if pair(d, c.cls) < 0]
    support.sort()
    coeffs: list[Fraction] = []
    while True:
        if support:
            gram = [[pair(candidates[i].cls, candidates[j].cls) for j in support]
                    for i in support]
            if not linalg.is_negative_definite(gram):
                raise SingularSupportGram(
                    "support Gram matrix is not negative definite")
            rhs = [pair(d, candidates[i].cls) for i in support]
            sol = linalg.solve(gram, rhs)
            assert sol is not None  # definite, hence invertible
            coeffs = list(sol)
        else:
            coeffs = []
        p = d
        for idx, x in zip(support, coeffs):
            p = p - x * candidates[idx].cls
        grew = False
        for i, c in enumerate(candidates):
            if i not in support and pair(p, c.cls) < 0:
                support.append(i)
                grew = True
        if not grew:
            break
        support.sort()
    if any(x < 0 for x in coeffs):
        raise NonConvergent(
            "negative support coefficient: candidate data inconsistent with "
            "pseudoeffectivity")
    pairs = tuple((candidates[i], x) for i, x in zip(support, coeffs) if x != 0)
    pairs = tuple(sorted(pairs, key=lambda t: tuple(t[0].cls.coords)))
    return ZariskiDecomposition(positive=p, negative_support=pairs)


def kappa_from_zariski(zd: ZariskiDecomposition | None,
                       elliptic_fibration: bool = False,
                       anticanonical_rigid: bool | None = None) -> str:
    """Anticanonical Iitaka dimension from the decomposition of -K.

    zd=None encodes a NotPseudoeffective signal.  Returns one of
    "-inf", "0", "1", "2", "0or1".
    """
    if zd is None:
        return "-inf"
    p = zd.positive
    p2 = self_intersection(p)
    if p2 > 0:
        return "2"
    if p.is_zero():
        return "0"
    # P != 0 with P.P = 0: a fibration certificate decides
    if elliptic_fibration:
        return "1"
    if anticanonical_rigid:
        return "0"
    return "0or1"
