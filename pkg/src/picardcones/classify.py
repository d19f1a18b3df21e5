"""Decision rules for rational polyhedrality of the effective cone and
finite generation of the total coordinate ring.

Each decision carries an auditable justification chain of labeled rules.
Geometric facts the lattice cannot see (very general position, the
non-torsion restriction certificate, automorphism finiteness) enter as
flags and are never guessed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .cones import RationalCone
from .lattice import (DivisorClass, IntersectionLattice, pair,
                      self_intersection)
from .negcurves import CurveClass, DynkinType, fiber_rank_sum
from .zariski import (NonConvergent, NotPseudoeffective, SingularSupportGram,
                      ZariskiDecomposition, kappa_from_zariski,
                      zariski_decompose)


class ClassificationError(ValueError):
    pass


@dataclass(frozen=True)
class Flags:
    k_trivial: bool = False
    k3_or_enriques: str | None = None  # "K3" | "Enriques"
    aut_finite: bool | None = None
    anticanonical_nef: bool | None = None
    minimal: bool = False
    general_position: bool = False
    anticanonical_rigid: bool | None = None
    # certificate that the isotropic nef boundary ray restricts to a
    # non-torsion class on its own curve, hence is not semiample
    restriction_nontorsion: bool = False
    curves_complete: bool = False


@dataclass(frozen=True)
class Fibration:
    m: int
    fiber_types: tuple[DynkinType, ...]

    def __post_init__(self):
        if self.m < 1:
            raise ClassificationError("fibration multiplicity m must be positive")
        for t in self.fiber_types:
            if not t.extended or t.rank < 1:
                raise ClassificationError(
                    "fiber types must be extended Dynkin diagrams of rank >= 1")

    @property
    def rank_sum(self) -> int:
        return sum(t.rank for t in self.fiber_types)


@dataclass(frozen=True)
class SurfaceData:
    name: str
    lattice: IntersectionLattice
    negative_curves: tuple[CurveClass, ...] = ()
    flags: Flags = field(default_factory=Flags)
    fibration: Fibration | None = None
    relative_minimal_model: "SurfaceData | None" = None
    # explicit effective-cone generators, for surfaces whose cone is known
    # but not spanned by negative curves alone (isotropic boundary rays)
    eff_generators: tuple[tuple[Fraction, ...], ...] | None = None

    def __post_init__(self):
        if self.flags.k_trivial:
            k = self.lattice.k
            for i in range(self.lattice.rank):
                e = [0] * self.lattice.rank
                e[i] = 1
                if pair(k, self.lattice.divisor(e)) != 0:
                    raise ClassificationError(
                        "k_trivial flag set but the canonical class is not "
                        "numerically trivial")
        for c in self.negative_curves:
            if c.cls.lattice != self.lattice:
                raise ClassificationError("certified curve in a different lattice")

    @property
    def rank(self) -> int:
        return self.lattice.rank

    def k_square(self) -> Fraction:
        return self_intersection(self.lattice.k)

    def certified_curves(self) -> list[CurveClass]:
        return [c for c in self.negative_curves if c.effective_certified]

    def certified_minus_two(self) -> list[CurveClass]:
        return [c for c in self.certified_curves() if c.is_minus_two()]

    def eff_cone(self) -> RationalCone | None:
        """The effective cone, available when explicit generators are given
        or the certified curve list is declared generating."""
        if self.eff_generators is not None:
            return RationalCone(self.lattice, self.eff_generators)
        curves = self.certified_curves()
        if not self.flags.curves_complete or not curves:
            return None
        return RationalCone.from_classes(self.lattice, [c.cls for c in curves])

    def elliptic_fibration_hint(self) -> bool:
        if self.fibration is not None:
            return True
        rel = self.relative_minimal_model
        return rel is not None and rel.fibration is not None


def mordell_weil_rank(fibration: Fibration) -> int:
    """Section-group rank of a rational elliptic fibration: 8 minus the sum
    of the fiber root-lattice ranks."""
    total = fibration.rank_sum
    if total > 8:
        raise ClassificationError(
            f"fiber ranks sum to {total} > 8: invalid configuration")
    return 8 - total


def anticanonical_zariski(s: SurfaceData) -> ZariskiDecomposition | None:
    """Decomposition of -K against the certified curves; None encodes the
    not-pseudoeffective outcome."""
    try:
        return zariski_decompose(s.lattice.minus_k, s.certified_curves(),
                                 eff_cone=s.eff_cone())
    except NotPseudoeffective:
        return None
    except (SingularSupportGram, NonConvergent) as exc:
        raise ClassificationError(
            f"anticanonical decomposition failed on {s.name!r}: {exc}") from exc


def anticanonical_kappa(s: SurfaceData) -> str:
    zd = anticanonical_zariski(s)
    return kappa_from_zariski(zd,
                              elliptic_fibration=s.elliptic_fibration_hint(),
                              anticanonical_rigid=s.flags.anticanonical_rigid)


@dataclass(frozen=True)
class Verdict:
    kappa_anti: str
    eff_polyhedral: bool | None
    cox_fg: bool | None
    justification: tuple[str, ...]
    mw_rank: int | None = None
    nfg_case: str | None = None

    def __post_init__(self):
        if self.cox_fg is True and self.eff_polyhedral is not True:
            raise ClassificationError(
                "finite generation implies a rational polyhedral effective cone")


def _eff_rules(s: SurfaceData, kappa: str) -> tuple[bool | None, list[str]]:
    rules: list[str] = []
    if s.rank <= 2:
        rules.append("eff:rank-le-2: Picard rank at most 2, boundary rays "
                     "are rational by the corpus certificates")
        return True, rules
    if kappa == "2":
        rules.append("eff:kappa-2: big anticanonical class forces a rational "
                     "polyhedral effective cone")
        return True, rules
    if s.flags.anticanonical_nef and s.k_square() == 0 and s.fibration is not None:
        total = s.fibration.rank_sum
        if total == 8:
            rules.append("eff:fiber-ranks-8: the (-2)-configuration reaches "
                         "the full rank 8, only finitely many negative curves")
            return True, rules
        rules.append(f"eff:fiber-ranks-deficient: fiber ranks sum to {total} < 8, "
                     "infinitely many (-1)-sections")
        return False, rules
    if kappa == "1" and s.relative_minimal_model is not None:
        rel_verdict, rel_rules = _eff_rules(s.relative_minimal_model,
                                            anticanonical_kappa(s.relative_minimal_model))
        rules.extend(f"rel[{s.relative_minimal_model.name}] {r}" for r in rel_rules)
        if rel_verdict is True:
            rules.append("eff:relative-model-transfer: polyhedrality lifts from "
                         "the relative minimal model through the finite "
                         "(-1)-curve bound")
            return True, rules
        if rel_verdict is False:
            rules.append("eff:relative-model-obstruction: the relative minimal "
                         "model embeds as a linear section, so its "
                         "non-polyhedral cone obstructs")
            return False, rules
    if s.flags.k_trivial:
        if s.flags.aut_finite is None:
            rules.append("eff:undetermined: numerically trivial canonical "
                         "class but no automorphism-finiteness flag")
            return None, rules
        rules.append("eff:k-trivial-aut: for trivial canonical class "
                     "polyhedrality is equivalent to finite automorphisms")
        return s.flags.aut_finite, rules
    rules.append(f"eff:undetermined: no rule applies (kappa={kappa})")
    return None, rules


def decide_eff_polyhedral(s: SurfaceData) -> tuple[bool | None, list[str]]:
    return _eff_rules(s, anticanonical_kappa(s))


def decide_cox_fg(s: SurfaceData) -> Verdict:
    kappa = anticanonical_kappa(s)
    eff, rules = _eff_rules(s, kappa)
    mw = None
    if s.fibration is not None:
        mw = mordell_weil_rank(s.fibration)
        rules.append(f"mw:shioda-tate: section rank 8 - {s.fibration.rank_sum} = {mw}")
    cox: bool | None
    case: str | None = None
    if s.flags.k_trivial:
        if s.flags.aut_finite is None:
            cox = None
            rules.append("cox:undetermined: automorphism finiteness unknown")
        else:
            cox = s.flags.aut_finite
            case = "iii" if cox else None
            rules.append("cox:k-trivial-aut: finite generation is equivalent "
                         "to a finite automorphism group")
    elif kappa == "2":
        cox = True
        case = "i"
        rules.append("cox:kappa-2: big anticanonical class, the section ring "
                     "is finitely generated")
    elif kappa == "1":
        cox = eff
        rules.append("cox:kappa-1-equiv: with anticanonical dimension 1, "
                     "finite generation is equivalent to a polyhedral "
                     "effective cone")
        if cox and s.fibration is not None and mw == 0:
            case = "ii"
    elif kappa == "0":
        if s.flags.anticanonical_nef:
            cox = False
            rules.append("cox:kappa-0-nef-not-semiample: -K nef with only "
                         "rigid multiples is not semiample")
        else:
            cox = None
            rules.append("cox:undetermined: kappa 0 without nef anticanonical "
                         "certificate")
    elif kappa == "-inf":
        if s.flags.restriction_nontorsion:
            cox = False
            rules.append("cox:kappa-neg-certificate: the isotropic nef ray "
                         "restricts to a non-torsion class, so it is nef but "
                         "not semiample")
        else:
            cox = None
            rules.append("cox:undetermined: kappa -inf needs the non-torsion "
                         "restriction certificate")
    else:  # "0or1"
        cox = None
        rules.append("cox:undetermined: anticanonical dimension not resolved "
                     "between 0 and 1")
    if cox is True and eff is None:
        # finite generation forces polyhedrality
        eff = True
        rules.append("eff:from-cox: finite generation forces a polyhedral "
                     "effective cone")
    return Verdict(kappa_anti=kappa, eff_polyhedral=eff, cox_fg=cox,
                   justification=tuple(rules), mw_rank=mw, nfg_case=case)


# ---------------------------------------------------------------------------
# bounded enumeration of nef classes with fixed square and fiber degree


def nef_classes_bounded(s: SurfaceData, a: int, b: int,
                        denominator_bound: int | None = None) -> list[DivisorClass]:
    """Nef classes D with D.D = a and -K.D = b on an extremal configuration.

    Parametrized along the finite-index sublattice spanned by the fiber, an
    m-section and eight independent fiber components: the section
    coefficient equals b, the component pairings range over a finite set of
    bounded-denominator rationals, and the fiber coefficient is solved from
    D.D = a.  Only classes that are nef against every certified curve are
    emitted.
    """
    if b <= 0:
        raise ClassificationError("the fiber degree b must be positive")
    if a < 0:
        raise ClassificationError("a must be non-negative")
    if s.fibration is None:
        raise ClassificationError("an elliptic fibration is required")
    if s.fibration.rank_sum != 8:
        raise ClassificationError("the configuration is not extremal")
    m = s.fibration.m
    lat = s.lattice
    f = (-m) * lat.k
    curves = s.certified_curves()
    section = next((c.cls for c in curves if pair(f, c.cls) == m), None)
    if section is None:
        raise ClassificationError("no m-section among the certified curves")
    comps = _independent_fiber_components(s)
    basis = [f, section] + comps
    basis_gram = [[pair(x, y) for y in basis] for x in basis]
    k = denominator_bound
    if k is None:
        k = abs(int(linalg.det(basis_gram)))
        if k == 0:
            raise ClassificationError("degenerate fiber basis")
    comp_gram = [[int(pair(x, y)) for y in comps] for x in comps]
    if not linalg.is_negative_definite(comp_gram):
        raise ClassificationError("chosen fiber components are not negative definite")
    s_dot_comp = [pair(section, x) for x in comps]
    s2 = pair(section, section)
    beta = Fraction(b)
    values = [Fraction(j, k) for j in range(0, b * k + 1)]
    found: set[tuple[Fraction, ...]] = set()
    import itertools as _it

    for bvec in _it.product(values, repeat=8):
        rhs = [bv - beta * sc for bv, sc in zip(bvec, s_dot_comp)]
        alpha = linalg.solve(comp_gram, rhs)
        if alpha is None:
            continue
        v = lat.zero
        for x, comp in zip(alpha, comps):
            v = v + x * comp
        # D.D = 2*alpha_f*beta*m + v.v + 2*beta*(v.s) + beta^2 s.s
        v2 = pair(v, v)
        vs = pair(v, section)
        alpha_f = (Fraction(a) - v2 - 2 * beta * vs - beta * beta * s2) \
            / (2 * beta * m)
        d = alpha_f * f + v + beta * section
        if any((x * k).denominator != 1 for x in d.coords):
            continue
        if any(pair(d, c.cls) < 0 for c in curves):
            continue
        found.add(tuple(d.coords))
    return [lat.divisor(c) for c in sorted(found)]


def _independent_fiber_components(s: SurfaceData) -> list[DivisorClass]:
    """Eight components spanning the fiber root lattices: per extended
    component of the (-2)-configuration, drop one node."""
    from .negcurves import connected_components, dual_graph, dynkin_classify

    comps = s.certified_minus_two()
    if not comps:
        raise ClassificationError("no certified (-2)-curves")
    graph = dual_graph(comps)
    chosen: list[DivisorClass] = []
    for comp in connected_components(graph):
        t = dynkin_classify(comp)
        if t is None or not t.extended:
            raise ClassificationError("fiber component graph is not extended Dynkin")
        nodes = sorted(comp.nodes, key=lambda c: tuple(c.cls.coords))
        chosen.extend(c.cls for c in nodes[:-1])
    if len(chosen) != 8:
        raise ClassificationError(
            f"independent fiber components number {len(chosen)}, expected 8")
    return chosen
