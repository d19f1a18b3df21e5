"""Surface description files and the bundled corpus.

A surface file is a JSON object carrying either a preset (expanded through
:mod:`picardcones.builder`) or an explicit Gram matrix and canonical class,
together with certified negative curves, semantic flags, optional elliptic
fibration data and an optional reference to the relative minimal model.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from importlib import resources
from pathlib import Path

from . import builder, negcurves
from .classify import Fibration, Flags, SurfaceData
from .cones import RationalCone
from .lattice import IntersectionLattice, LatticeError
from .negcurves import CurveClass, DynkinType, curve, minus_one_classes


class SurfaceFileError(ValueError):
    pass


_FIBER_RE = re.compile(r"^([ADE])~(\d+)$")

_FLAG_FIELDS = {"k_trivial", "k3_or_enriques", "aut_finite", "anticanonical_nef",
                "minimal", "general_position", "anticanonical_rigid",
                "restriction_nontorsion", "curves_complete"}

_TOP_FIELDS = {"name", "preset", "gram", "canonical", "rational_surface",
               "negative_curves", "eff_generators", "flags", "fibration",
               "relative_minimal_model"}


def parse_fiber_label(label: str) -> DynkinType:
    m = _FIBER_RE.match(label)
    if not m:
        raise SurfaceFileError(f"cannot parse fiber label {label!r}; "
                               "expected e.g. \"A~2\", \"D~4\", \"E~8\"")
    return DynkinType(m.group(1), True, int(m.group(2)))


def fiber_label(t: DynkinType) -> str:
    return f"{t.series}~{t.rank}"


def corpus_names() -> list[str]:
    root = resources.files("picardcones") / "corpus"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def corpus_path(name: str) -> Path:
    p = resources.files("picardcones") / "corpus" / f"{name}.json"
    return Path(str(p))


def minus_one_complete_bound(r: int) -> int:
    """Smallest degree bound at which the (-1)-class search on a blow-up of
    the plane at r points is provably complete (Cauchy-Schwarz cutoff).
    No finite cutoff exists once r reaches 9."""
    if r >= 9:
        raise SurfaceFileError("no finite (-1)-class bound for r >= 9")
    d = 0
    while (3 * (d + 1) - 1) ** 2 <= r * ((d + 1) ** 2 + 1):
        d += 1
    return max(1, d)


def _expand_preset(raw: dict) -> tuple[IntersectionLattice, list[CurveClass],
                                       dict, str | None]:
    preset = raw["preset"]
    kind = preset.get("kind")
    auto_flags: dict = {}
    rel_ref: str | None = None
    if kind == "plane_blowup":
        r = int(preset["r"])
        spec = builder.BlowupSpec("plane", tuple([builder.General()] * r))
        lattice, _ = builder.build_lattice(spec)
        curves: list[CurveClass] = []
        if raw.get("flags", {}).get("general_position", True) and 1 <= r <= 8:
            bound = minus_one_complete_bound(r)
            for i, d in enumerate(minus_one_classes(lattice, bound)):
                curves.append(curve(d, certified=True, label=f"c{i}"))
            auto_flags["general_position"] = True
            if 2 <= r <= 8:
                auto_flags["curves_complete"] = True
        return lattice, curves, auto_flags, rel_ref
    if kind == "hirzebruch":
        n = int(preset["n"])
        spec = builder.BlowupSpec("hirzebruch", (), hirzebruch_n=n)
        lattice, _ = builder.build_lattice(spec)
        curves = []
        if n > 0:
            coords = [0] * lattice.rank
            coords[1] = 1
            curves.append(curve(lattice.divisor(coords), certified=True, label="s"))
        return lattice, curves, auto_flags, rel_ref
    if kind == "quartic_k3_blowup":
        spec = builder.BlowupSpec("quartic_k3", (builder.General(),))
        lattice, _ = builder.build_lattice(spec)
        curves = [curve(lattice.divisor([0, 1]), certified=True, label="E")]
        return lattice, curves, auto_flags, rel_ref
    if kind == "tower":
        variant = preset.get("variant", "triple")
        depth = int(preset["depth"])
        ts = builder.build_tower_surface(variant, depth)
        curves = [curve(ts.lattice.divisor(c.coords), certified=True, label=c.label)
                  for c in ts.curves]
        rel_ref = "pencil_iv" if variant == "triple" else "hesse_a2x4"
        return ts.lattice, curves, auto_flags, rel_ref
    raise SurfaceFileError(f"unknown preset kind {kind!r}")


def _parse_raw(raw: dict, base_dir: Path | None, depth: int) -> SurfaceData:
    unknown = set(raw) - _TOP_FIELDS
    if unknown:
        raise SurfaceFileError(f"unknown surface file fields: {sorted(unknown)}")
    has_preset = "preset" in raw
    has_gram = "gram" in raw or "canonical" in raw
    if has_preset == has_gram:
        raise SurfaceFileError(
            "exactly one of 'preset' or 'gram'+'canonical' must be present")
    flags_raw = dict(raw.get("flags", {}))
    bad = set(flags_raw) - _FLAG_FIELDS
    if bad:
        raise SurfaceFileError(f"unknown flags: {sorted(bad)}")

    rel_ref = raw.get("relative_minimal_model")
    auto_rel: str | None = None
    if has_preset:
        lattice, curves, auto_flags, auto_rel = _expand_preset(raw)
        for key, val in auto_flags.items():
            flags_raw.setdefault(key, val)
    else:
        if "gram" not in raw or "canonical" not in raw:
            raise SurfaceFileError("explicit surfaces need both gram and canonical")
        try:
            lattice = IntersectionLattice(
                rank=len(raw["gram"]),
                gram=tuple(tuple(int(x) for x in row) for row in raw["gram"]),
                canonical=tuple(int(x) for x in raw["canonical"]),
                rational_surface=bool(raw.get("rational_surface", True)))
        except LatticeError as exc:
            raise SurfaceFileError(f"invalid lattice: {exc}") from exc
        curves = []
    for i, entry in enumerate(raw.get("negative_curves", [])):
        try:
            d = lattice.divisor(entry["coords"])
            curves.append(curve(d, certified=bool(entry.get("certified", True)),
                                label=str(entry.get("label", f"c{i}"))))
        except (LatticeError, KeyError) as exc:
            raise SurfaceFileError(
                f"negative_curves[{i}] is invalid: {exc}") from exc

    fibration = None
    if "fibration" in raw:
        fib = raw["fibration"]
        try:
            fibration = Fibration(m=int(fib.get("m", 1)),
                                  fiber_types=tuple(parse_fiber_label(s)
                                                    for s in fib.get("fibers", [])))
        except (ValueError, TypeError) as exc:
            raise SurfaceFileError(f"invalid fibration block: {exc}") from exc

    rel_model = None
    ref = rel_ref or auto_rel
    if ref is not None:
        if depth > 4:
            raise SurfaceFileError("relative minimal model references nest too deep")
        rel_model = load_surface(ref, base_dir=base_dir, _depth=depth + 1)

    flags = Flags(**{k: v for k, v in flags_raw.items()})
    eff_gens = None
    if raw.get("eff_generators"):
        eff_gens = tuple(tuple(Fraction(x) for x in g)
                         for g in raw["eff_generators"])
        RationalCone(lattice, eff_gens)  # validates shape and nonzero rays
    sd = SurfaceData(name=str(raw.get("name", "unnamed")), lattice=lattice,
                     negative_curves=tuple(curves), flags=flags,
                     fibration=fibration, relative_minimal_model=rel_model,
                     eff_generators=eff_gens)
    _validate_fibration_consistency(sd)
    return sd


def _validate_fibration_consistency(sd: SurfaceData):
    """Declared fiber ranks must match the certified (-2)-configuration when
    the curve list is complete."""
    if sd.fibration is None or not sd.flags.curves_complete:
        return
    comps = sd.certified_minus_two()
    declared = sd.fibration.rank_sum
    if not comps:
        if declared != 0:
            raise SurfaceFileError(
                "fibration declares reducible fibers but no (-2)-curves are "
                "certified")
        return
    actual = negcurves.fiber_rank_sum(comps)
    if actual != declared:
        raise SurfaceFileError(
            f"certified (-2)-configuration has rank sum {actual}, fibration "
            f"declares {declared}")


def surface_eff_cone(sd: SurfaceData) -> RationalCone | None:
    """Effective-cone data: explicit generators when the file carries them,
    else the certified negative curves when declared complete."""
    return sd.eff_cone()


def load_surface(source: str | Path, base_dir: Path | None = None,
                 _depth: int = 0) -> SurfaceData:
    """Load a surface from a path or a bundled corpus name."""
    path = Path(source)
    if not path.suffix:
        candidate = corpus_path(str(source))
        if candidate.exists():
            path = candidate
        elif base_dir is not None and (base_dir / f"{source}.json").exists():
            path = base_dir / f"{source}.json"
    if not path.exists():
        raise SurfaceFileError(f"surface file {source!r} not found")
    try:
        raw = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise SurfaceFileError(
            f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from exc
    try:
        return _parse_raw(raw, path.parent, _depth)
    except (SurfaceFileError, LatticeError, ValueError) as exc:
        raise SurfaceFileError(f"{path}: {exc}") from exc


parse_surface = load_surface


def surface_to_jsonable(sd: SurfaceData) -> dict:
    """Canonical explicit form (presets already expanded); parsing it back
    yields an equivalent surface."""
    out: dict = {
        "name": sd.name,
        "gram": [list(row) for row in sd.lattice.gram],
        "canonical": list(sd.lattice.canonical),
        "rational_surface": sd.lattice.rational_surface,
    }
    if sd.negative_curves:
        out["negative_curves"] = [
            {"coords": [int(x) for x in c.cls.coords],
             "certified": c.effective_certified, "label": c.label}
            for c in sd.negative_curves]
    flags = {}
    defaults = Flags()
    for name in _FLAG_FIELDS:
        val = getattr(sd.flags, name)
        if val != getattr(defaults, name):
            flags[name] = val
    if flags:
        out["flags"] = flags
    if sd.fibration is not None:
        out["fibration"] = {"m": sd.fibration.m,
                            "fibers": [fiber_label(t)
                                       for t in sd.fibration.fiber_types]}
    if sd.relative_minimal_model is not None:
        out["relative_minimal_model"] = sd.relative_minimal_model.name
    if sd.eff_generators is not None:
        out["eff_generators"] = [[int(x) for x in g] for g in sd.eff_generators]
    return out
