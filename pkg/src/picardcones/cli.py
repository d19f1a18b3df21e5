"""Command-line interface.

Subcommands: info, negcurves, dual, rays, zariski, tower, classify,
check-effc.  Exit codes: 0 success, 1 input error, 2 undetermined or
inconclusive verdict, so scripts can tell the outcomes apart.  All rational
numbers are printed as exact "p/q" strings; --json emits a deterministic
machine-readable report.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction

from . import cones, negcurves, surfaces, tower, zariski
from .classify import (ClassificationError, Flags, decide_cox_fg,
                       mordell_weil_rank, nef_classes_bounded)
from .lattice import LatticeError, k_degree, self_intersection
from .linalg import signature
from .surfaces import SurfaceFileError, load_surface, surface_to_jsonable


def frac_str(x) -> str:
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def parse_frac(s: str) -> Fraction:
    return Fraction(s.strip())


def parse_class(s: str) -> list[Fraction]:
    return [parse_frac(tok) for tok in s.split(",") if tok.strip()]


def _digest(payload) -> str:
    blob = json.dumps(payload, sort_keys=True, default=str)
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def make_report(command: str, inputs: dict, results: dict,
                justification=None, bounds=None) -> dict:
    report = {
        "command": command,
        "input_digest": _digest(inputs),
        "inputs": inputs,
        "results": results,
    }
    if justification is not None:
        report["justification"] = list(justification)
    if bounds is not None:
        report["bounds"] = bounds
    return report


def emit(report: dict, as_json: bool, lines: list[str]) -> None:
    if as_json:
        print(json.dumps(report, sort_keys=True, indent=2, default=str))
    else:
        for line in lines:
            print(line)


def _tri(v) -> str:
    return "undetermined" if v is None else ("true" if v else "false")


def cmd_info(args) -> int:
    sd = load_surface(args.surface)
    lat = sd.lattice
    sig = signature(lat.gram)
    results = {
        "name": sd.name,
        "rank": lat.rank,
        "signature": list(sig),
        "k_square": frac_str(self_intersection(lat.k)),
        "certified_curves": len(sd.certified_curves()),
        "fibration": None if sd.fibration is None else {
            "m": sd.fibration.m,
            "fibers": [surfaces.fiber_label(t) for t in sd.fibration.fiber_types]},
        "surface": surface_to_jsonable(sd),
    }
    report = make_report("info", {"surface": str(args.surface)}, results)
    emit(report, args.json, [
        f"surface {sd.name}: rank {lat.rank}, signature {sig}, "
        f"K^2 = {results['k_square']}, "
        f"{results['certified_curves']} certified negative curves",
    ])
    return 0


def cmd_negcurves(args) -> int:
    sd = load_surface(args.surface)
    kind = {"-1": (-1, -1), "-2": (-2, 0)}[args.kind]
    if args.count_only:
        n = negcurves.count_classes(sd.lattice, kind[0], kind[1], args.bound)
        classes = None
    else:
        found = negcurves.enumerate_classes(sd.lattice, kind[0], kind[1], args.bound)
        classes = [[frac_str(x) for x in d.coords] for d in found]
        n = len(found)
    results = {"count": n}
    if classes is not None:
        results["classes"] = classes
    report = make_report("negcurves",
                         {"surface": str(args.surface), "kind": args.kind,
                          "bound": args.bound},
                         results, bounds={"height": args.bound})
    lines = [f"{n} classes with square {kind[0]}, K-degree {kind[1]} "
             f"at height bound {args.bound}"]
    if classes is not None:
        lines += ["  (" + ",".join(c) + ")" for c in classes]
    emit(report, args.json, lines)
    return 0


def _surface_cone(sd) -> cones.RationalCone:
    eff = surfaces.surface_eff_cone(sd)
    if eff is not None:
        return eff
    curves = sd.certified_curves()
    if not curves:
        raise SurfaceFileError(
            f"surface {sd.name!r} carries no cone generators")
    return cones.RationalCone.from_classes(sd.lattice, [c.cls for c in curves])


def cmd_dual(args) -> int:
    sd = load_surface(args.surface)
    cone = _surface_cone(sd)
    dual = cones.dual_cone(cone)
    results = {
        "generators": [[frac_str(x) for x in g] for g in cone.canonical_rays],
        "dual_rays": [[frac_str(x) for x in g] for g in dual.canonical_rays],
    }
    report = make_report("dual", {"surface": str(args.surface)}, results)
    emit(report, args.json,
         ["cone rays:"] +
         ["  (" + ",".join(map(str, r)) + ")" for r in cone.canonical_rays] +
         ["dual rays:"] +
         ["  (" + ",".join(map(str, r)) + ")" for r in dual.canonical_rays])
    return 0


def cmd_rays(args) -> int:
    sd = load_surface(args.surface)
    cone = _surface_cone(sd)
    rays = cone.canonical_rays
    results = {"extremal_rays": [[frac_str(x) for x in r] for r in rays]}
    report = make_report("rays", {"surface": str(args.surface)}, results)
    emit(report, args.json,
         [f"{len(rays)} extremal rays:"] +
         ["  (" + ",".join(map(str, r)) + ")" for r in rays])
    return 0


def cmd_zariski(args) -> int:
    sd = load_surface(args.surface)
    d = sd.lattice.divisor(parse_class(args.cls))
    candidates = sd.certified_curves()
    inputs = {"surface": str(args.surface), "class": args.cls}
    try:
        zd = zariski.zariski_decompose(d, candidates,
                                       eff_cone=surfaces.surface_eff_cone(sd))
    except zariski.NotPseudoeffective:
        report = make_report("zariski", inputs,
                             {"pseudoeffective": False})
        emit(report, args.json, ["class is not pseudoeffective; "
                                 "no decomposition exists"])
        return 0
    except (zariski.SingularSupportGram, zariski.NonConvergent) as exc:
        report = make_report("zariski", inputs, {"error": str(exc)})
        emit(report, args.json, [f"inconclusive: {exc}"])
        return 2
    results = {
        "positive": [frac_str(x) for x in zd.positive.coords],
        "negative_support": [
            {"label": c.label, "coords": [frac_str(x) for x in c.cls.coords],
             "coefficient": frac_str(x)}
            for c, x in zd.negative_support],
    }
    report = make_report("zariski", inputs, results)
    lines = ["P = (" + ",".join(results["positive"]) + ")"]
    for entry in results["negative_support"]:
        lines.append(f"N += {entry['coefficient']} * "
                     f"({','.join(entry['coords'])})  [{entry['label']}]")
    if not zd.negative_support:
        lines.append("N = 0")
    emit(report, args.json, lines)
    return 0


def cmd_tower(args) -> int:
    variant = tower.NODE if args.variant == "node" else tower.TRIPLE_POINT
    states = tower.tower_states(variant, args.steps)
    rows = [{"i": s.i, "a": s.a_prev, "b": frac_str(s.b_cur),
             "mu": frac_str(s.mu_cur), "coeff": frac_str(s.coeff)}
            for s in states]
    results = {"variant": variant, "rows": rows,
               "kappa_persists": tower.kappa_persists(states[-1])}
    report = make_report("tower", {"steps": args.steps, "variant": variant},
                         results)
    lines = [f"{'i':>3} {'a_i':>8} {'b_i':>10} {'mu_i':>12} {'coeff':>14}"]
    for r in rows:
        lines.append(f"{r['i']:>3} {r['a']:>8} {r['b']:>10} {r['mu']:>12} "
                     f"{r['coeff']:>14}")
    if not results["kappa_persists"]:
        lines.append("kappa drops below 1 at the last step (mu <= 1)")
    emit(report, args.json, lines)
    return 0


def cmd_classify(args) -> int:
    sd = load_surface(args.surface)
    if args.flag:
        overrides = {}
        for f in args.flag:
            key, _, val = f.partition("=")
            key = key.replace("-", "_")
            if key not in Flags.__dataclass_fields__:
                raise SurfaceFileError(f"unknown flag {f!r}")
            overrides[key] = True if val == "" else json.loads(val)
        merged = {name: getattr(sd.flags, name)
                  for name in Flags.__dataclass_fields__}
        merged.update(overrides)
        from dataclasses import replace
        sd = replace(sd, flags=Flags(**merged))
    verdict = decide_cox_fg(sd)
    results = {
        "kappa_anti": verdict.kappa_anti,
        "eff_polyhedral": _tri(verdict.eff_polyhedral),
        "cox_fg": _tri(verdict.cox_fg),
        "mw_rank": verdict.mw_rank,
        "case": verdict.nfg_case,
    }
    report = make_report("classify",
                         {"surface": str(args.surface), "flags": args.flag or []},
                         results, justification=verdict.justification)
    lines = [f"kappa(-K) = {verdict.kappa_anti}",
             f"eff_polyhedral = {results['eff_polyhedral']}",
             f"cox_fg = {results['cox_fg']}"]
    if verdict.mw_rank is not None:
        lines.append(f"mordell_weil_rank = {verdict.mw_rank}")
    if verdict.nfg_case:
        lines.append(f"case ({verdict.nfg_case})")
    lines += ["justification:"] + [f"  {r}" for r in verdict.justification]
    emit(report, args.json, lines)
    undecided = (verdict.eff_polyhedral is None or verdict.cox_fg is None
                 or verdict.kappa_anti == "0or1")
    return 2 if undecided else 0


def cmd_check_effc(args) -> int:
    sd = load_surface(args.surface)
    rays = [c.cls for c in sd.certified_curves()
            if self_intersection(c.cls) < 0]
    if args.ample:
        ample = sd.lattice.divisor(parse_class(args.ample))
    else:
        ample = sd.lattice.minus_k
    ok = cones.effc_sample_check(sd.lattice, rays, ample, args.bound)
    witnesses = []
    if not ok:
        witnesses = cones.effc_violations(sd.lattice, rays, ample, args.bound)
    results = {"holds": ok,
               "witnesses": [list(w) for w in witnesses]}
    report = make_report("check-effc",
                         {"surface": str(args.surface), "bound": args.bound,
                          "ample": args.ample},
                         results, bounds={"height": args.bound})
    lines = [("light half-cone lies inside the negative-curve cone up to "
              f"bound {args.bound}") if ok else
             (f"violated: e.g. {witnesses[:1]} escapes the cone")]
    emit(report, args.json, lines)
    return 0


def cmd_nefclasses(args) -> int:
    sd = load_surface(args.surface)
    found = nef_classes_bounded(sd, args.a, args.b, args.k)
    results = {"count": len(found),
               "classes": [[frac_str(x) for x in d.coords] for d in found]}
    report = make_report("nef-classes",
                         {"surface": str(args.surface), "a": args.a,
                          "b": args.b, "k": args.k}, results)
    emit(report, args.json,
         [f"{len(found)} nef classes with D.D={args.a}, -K.D={args.b}"] +
         ["  (" + ",".join(c) + ")" for c in results["classes"]])
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="picardcones",
        description="Exact divisor-cone computations on surface Picard lattices")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        sp = sub.add_parser(name, **kwargs)
        sp.set_defaults(fn=fn)
        sp.add_argument("--json", action="store_true",
                        help="machine-readable report")
        return sp

    sp = add("info", cmd_info, help="lattice summary of a surface file")
    sp.add_argument("surface")

    sp = add("negcurves", cmd_negcurves, help="enumerate (-1)/(-2) classes")
    sp.add_argument("surface")
    sp.add_argument("--kind", choices=["-1", "-2"], default="-1")
    sp.add_argument("--bound", type=int, default=5)
    sp.add_argument("--count-only", action="store_true")

    sp = add("dual", cmd_dual, help="dual cone of the effective-cone data")
    sp.add_argument("surface")

    sp = add("rays", cmd_rays, help="extremal rays of the effective-cone data")
    sp.add_argument("surface")

    sp = add("zariski", cmd_zariski, help="Zariski decomposition of a class")
    sp.add_argument("surface")
    sp.add_argument("cls", metavar="CLASS",
                    help="comma-separated rational coordinates, e.g. 3,-1,-1")

    sp = add("tower", cmd_tower, help="blow-up tower multiplicity table")
    sp.add_argument("--steps", type=int, default=3)
    sp.add_argument("--variant", choices=["triple", "node"], default="triple")

    sp = add("classify", cmd_classify,
             help="polyhedrality / finite-generation verdict")
    sp.add_argument("surface")
    sp.add_argument("--flag", action="append",
                    help="override a surface flag, e.g. restriction-nontorsion "
                         "or aut-finite=false")

    sp = add("check-effc", cmd_check_effc,
             help="sampled light-cone inclusion check")
    sp.add_argument("surface")
    sp.add_argument("--bound", type=int, default=4)
    sp.add_argument("--ample", default=None,
                    help="comma-separated coordinates; defaults to -K")

    sp = add("nef-classes", cmd_nefclasses,
             help="nef classes with fixed square and fiber degree")
    sp.add_argument("surface")
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--b", type=int, required=True)
    sp.add_argument("--k", type=int, default=None)

    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (SurfaceFileError, LatticeError, ClassificationError,
            cones.ConeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
