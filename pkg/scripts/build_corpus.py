#!/usr/bin/env python3
"""Regenerate the bundled surface corpus deterministically.

Writes JSON files into src/picardcones/corpus/.  Run from the repo root:

    python scripts/build_corpus.py
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from picardcones.builder import HESSE_TRIANGLES  # noqa: E402

CORPUS = ROOT / "src" / "picardcones" / "corpus"


def line_coords(points):
    coords = [0] * 10
    coords[0] = 1
    for p in points:
        coords[p] = -1
    return coords


def exceptional(i):
    coords = [0] * 10
    coords[i] = 1
    return coords


def chain_root(i):
    # strict transform of the i-th exceptional in a length-9 infinitely-near chain
    coords = [0] * 10
    coords[i] = 1
    coords[i + 1] = -1
    return coords


def write(name, payload):
    path = CORPUS / f"{name}.json"
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    print(f"wrote {path.relative_to(ROOT)}")


def main():
    CORPUS.mkdir(parents=True, exist_ok=True)

    write("p2", {
        "name": "p2",
        "preset": {"kind": "plane_blowup", "r": 0},
        "flags": {"anticanonical_nef": True, "minimal": True},
    })
    write("f0", {
        "name": "f0",
        "preset": {"kind": "hirzebruch", "n": 0},
        "flags": {"anticanonical_nef": True, "minimal": True},
    })
    write("f2", {
        "name": "f2",
        "preset": {"kind": "hirzebruch", "n": 2},
        "flags": {"anticanonical_nef": True, "minimal": True},
    })
    for r in range(1, 9):
        write(f"dp{r}", {
            "name": f"dp{r}",
            "preset": {"kind": "plane_blowup", "r": r},
            "flags": {"anticanonical_nef": True, "general_position": True},
        })

    # blow-up of the plane at the nine base points of a general cubic pencil:
    # all anticanonical fibers integral, so the certified list carries only
    # the nine sections and the fibration has no reducible fibers
    write("cubic_pencil", {
        "name": "cubic_pencil",
        "preset": {"kind": "plane_blowup", "r": 9},
        "flags": {"anticanonical_nef": True, "general_position": False},
        "negative_curves": [
            {"coords": exceptional(i), "certified": True, "label": f"E{i}"}
            for i in range(1, 10)],
        "fibration": {"m": 1, "fibers": []},
    })

    # the four-triangle pencil: twelve lines in four parallel classes, each
    # class a fiber of type A~2; the nine sections exhaust the section group
    hesse_curves = [
        {"coords": exceptional(i), "certified": True, "label": f"E{i}"}
        for i in range(1, 10)]
    for t, triangle in enumerate(HESSE_TRIANGLES):
        for l, pts in enumerate(triangle):
            hesse_curves.append({"coords": line_coords(pts), "certified": True,
                                 "label": f"T{t + 1}L{l + 1}"})
    write("hesse_a2x4", {
        "name": "hesse_a2x4",
        "preset": {"kind": "plane_blowup", "r": 9},
        "flags": {"anticanonical_nef": True, "general_position": False,
                  "curves_complete": True},
        "negative_curves": hesse_curves,
        "fibration": {"m": 1, "fibers": ["A~2", "A~2", "A~2", "A~2"]},
    })

    # extremal fibration with a single additive fiber of maximal rank: the
    # nine components form the extended E8 graph, one section remains
    e8_curves = [{"coords": chain_root(i), "certified": True,
                  "label": f"R{i}"} for i in range(1, 9)]
    e8_curves.append({"coords": line_coords((1, 2, 3)), "certified": True,
                      "label": "R0"})
    e8_curves.append({"coords": exceptional(9), "certified": True,
                      "label": "E9"})
    write("e8_extremal", {
        "name": "e8_extremal",
        "preset": {"kind": "plane_blowup", "r": 9},
        "flags": {"anticanonical_nef": True, "general_position": False,
                  "curves_complete": True},
        "negative_curves": e8_curves,
        "fibration": {"m": 1, "fibers": ["E~8"]},
    })

    # pencil with one fiber of three concurrent lines (the rest integral):
    # the base of the triple-point tower
    iv_curves = [
        {"coords": exceptional(i), "certified": True, "label": f"E{i}"}
        for i in range(1, 10)]
    for i in range(3):
        iv_curves.append({"coords": line_coords(range(1 + 3 * i, 4 + 3 * i)),
                          "certified": True, "label": f"L{i + 1}"})
    write("pencil_iv", {
        "name": "pencil_iv",
        "preset": {"kind": "plane_blowup", "r": 9},
        "flags": {"anticanonical_nef": True, "general_position": False},
        "negative_curves": iv_curves,
        "fibration": {"m": 1, "fibers": ["A~2"]},
    })

    # blow-up of a very general quartic at a very general point: the
    # effective cone has an isotropic boundary ray (the strict transform of
    # the tangent hyperplane section)
    write("quartic_blowup", {
        "name": "quartic_blowup",
        "preset": {"kind": "quartic_k3_blowup"},
        "flags": {"anticanonical_nef": False},
        "eff_generators": [[0, 1], [1, -2]],
    })

    # a K3 carrier for the trivial-canonical branch; automorphism
    # finiteness is geometric input
    write("k3_fin_aut", {
        "name": "k3_fin_aut",
        "gram": [[2, 1], [1, -2]],
        "canonical": [0, 0],
        "rational_surface": False,
        "flags": {"k_trivial": True, "k3_or_enriques": "K3",
                  "aut_finite": True, "anticanonical_nef": True,
                  "minimal": True},
        "negative_curves": [
            {"coords": [0, 1], "certified": True, "label": "C"}],
    })

    for depth in range(1, 5):
        write(f"tower_triple_d{depth}", {
            "name": f"tower_triple_d{depth}",
            "preset": {"kind": "tower", "variant": "triple", "depth": depth},
        })
    write("tower_node_d1", {
        "name": "tower_node_d1",
        "preset": {"kind": "tower", "variant": "node", "depth": 1},
    })
    write("tower_node_d2", {
        "name": "tower_node_d2",
        "preset": {"kind": "tower", "variant": "node", "depth": 2},
    })


if __name__ == "__main__":
    main()
