import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import box_enumerate, cremona_minus_one_orbit
from picardcones.builder import BlowupSpec, General, build_lattice
from picardcones.lattice import LatticeError
from picardcones.linalg import signature
from picardcones.negcurves import (CurveClass, curve, connected_components,
                                   count_classes, dual_graph, dynkin_classify,
                                   enumerate_classes, minus_one_classes,
                                   minus_two_classes)
from picardcones.surfaces import load_surface, minus_one_complete_bound

COMPLETE_BOUNDS = {1: 3, 2: 4, 3: 5, 4: 5, 5: 6, 6: 7, 7: 8, 8: 17}
DP_COUNTS = {1: 1, 2: 3, 3: 6, 4: 10, 5: 16, 6: 27, 7: 56, 8: 240}


def plane_lattice(r):
    lat, _ = build_lattice(BlowupSpec("plane", tuple([General()] * r)))
    return lat


def coords_set(classes):
    return {tuple(int(x) for x in d.coords) for d in classes}


def test_bl1_unique_exceptional():
    assert coords_set(minus_one_classes(plane_lattice(1), 3)) == {(0, 1)}


def test_bl3_six_lines():
    expected = {(0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1),
                (1, -1, -1, 0), (1, -1, 0, -1), (1, 0, -1, -1)}
    assert coords_set(minus_one_classes(plane_lattice(3), 5)) == expected


@pytest.mark.parametrize("r", range(1, 9))
def test_del_pezzo_minus_one_counts(r):
    lat = plane_lattice(r)
    found = minus_one_classes(lat, COMPLETE_BOUNDS[r])
    assert len(found) == DP_COUNTS[r]
    assert count_classes(lat, -1, -1, COMPLETE_BOUNDS[r]) == DP_COUNTS[r]


@pytest.mark.parametrize("r", [3, 5, 8])
def test_counts_against_orbit_oracle(r):
    lat = plane_lattice(r)
    assert coords_set(minus_one_classes(lat, COMPLETE_BOUNDS[r])) == \
        cremona_minus_one_orbit(r)


@pytest.mark.parametrize("r,bound", [(1, 3), (2, 3), (3, 4)])
def test_counts_against_box_oracle(r, bound):
    # the box oracle bounds every coordinate, so compare within the box
    lat = plane_lattice(r)
    box = set(box_enumerate(lat, -1, -1, bound))
    enum = {c for c in coords_set(minus_one_classes(lat, bound))
            if all(abs(x) <= bound for x in c)}
    assert enum == box


def test_minus_two_r3():
    found = coords_set(minus_two_classes(plane_lattice(3), 1))
    assert (1, -1, -1, -1) in found


def test_p2_has_no_negative_classes():
    lat = plane_lattice(0)
    assert minus_one_classes(lat, 3) == []
    assert minus_two_classes(lat, 3) == []


def test_general_lattice_box_path():
    quartic = load_surface("quartic_blowup").lattice
    assert coords_set(minus_one_classes(quartic, 3)) == {(0, 1)}
    assert minus_two_classes(quartic, 3) == []


def test_hirzebruch_negative_section():
    # enumeration lists classes: with K-degree 0 both signs qualify, and
    # which one is a curve is certification data
    f2 = load_surface("f2").lattice
    assert coords_set(minus_two_classes(f2, 2)) == {(0, 1), (0, -1)}


def test_monotone_in_bound():
    lat = plane_lattice(9)
    previous: set = set()
    for bound in (1, 2, 3, 4, 5):
        current = coords_set(minus_one_classes(lat, bound))
        assert previous <= current
        previous = current


def test_cubic_pencil_counts_strictly_increase():
    lat = load_surface("cubic_pencil").lattice
    counts = [count_classes(lat, -1, -1, b) for b in (5, 10, 15, 20)]
    assert all(a < b for a, b in zip(counts, counts[1:]))


def test_count_matches_enumeration():
    lat = plane_lattice(9)
    for bound in (2, 4, 6):
        assert count_classes(lat, -1, -1, bound) == \
            len(minus_one_classes(lat, bound))


def test_complete_bound_is_cauchy_schwarz_cutoff():
    # beyond the cutoff no further solutions can exist, so enumerating at a
    # much larger bound finds nothing new
    for r in (3, 6, 8):
        lat = plane_lattice(r)
        b = minus_one_complete_bound(r)
        assert coords_set(minus_one_classes(lat, b)) == \
            coords_set(minus_one_classes(lat, b + 9))


def test_deterministic_lexicographic_order():
    lat = plane_lattice(5)
    found = minus_one_classes(lat, 6)
    coords = [tuple(d.coords) for d in found]
    assert coords == sorted(coords)


# ---------------------------------------------------------------------------
# dual graphs and Dynkin recognition


def minus_two_curves(lat, coords_list):
    return [curve(lat.divisor(c), certified=True, label=f"c{i}")
            for i, c in enumerate(coords_list)]


def test_curveclass_validates_invariants():
    lat = plane_lattice(2)
    with pytest.raises(LatticeError):
        CurveClass(lat.divisor([0, 1, 0]), self_int=-2, k_deg=-1, genus=0)


def test_dual_graph_triangle():
    hesse = load_surface("hesse_a2x4")
    lines = [c for c in hesse.certified_curves() if c.label.startswith("T1")]
    g = dual_graph(lines)
    assert sorted(g.edges) == [(0, 1, 1), (0, 2, 1), (1, 2, 1)]
    t = dynkin_classify(g)
    assert (t.series, t.extended, t.rank) == ("A", True, 2)


def test_dual_graph_single_node_and_path():
    lat = plane_lattice(3)
    single = minus_two_curves(lat, [(1, -1, -1, -1)])
    g = dual_graph(single)
    assert g.edges == ()
    t = dynkin_classify(g)
    assert (t.series, t.extended, t.rank) == ("A", False, 1)

    chain = load_surface("e8_extremal")
    two = [c for c in chain.certified_curves() if c.label in ("R1", "R2")]
    t = dynkin_classify(dual_graph(two))
    assert (t.series, t.extended, t.rank) == ("A", False, 2)


def test_dual_graph_rejects_non_minus_two():
    lat = plane_lattice(1)
    with pytest.raises(LatticeError):
        dual_graph([curve(lat.divisor([0, 1]))])


def test_hesse_configuration_is_four_extended_a2():
    hesse = load_surface("hesse_a2x4")
    comps = connected_components(dual_graph(hesse.certified_minus_two()))
    assert len(comps) == 4
    for comp in comps:
        t = dynkin_classify(comp)
        assert (t.series, t.extended, t.rank) == ("A", True, 2)


def test_e8_fiber_recognized():
    e8 = load_surface("e8_extremal")
    comps = connected_components(dual_graph(e8.certified_minus_two()))
    assert len(comps) == 1
    t = dynkin_classify(comps[0])
    assert (t.series, t.extended, t.rank) == ("E", True, 8)


def test_extended_gram_semidefinite_finite_definite():
    # lattice-level meaning of extended vs finite diagrams
    hesse = load_surface("hesse_a2x4")
    for comp in connected_components(dual_graph(hesse.certified_minus_two())):
        assert signature(comp.gram()) == (0, 2, 1)
    e8 = load_surface("e8_extremal")
    comp = connected_components(dual_graph(e8.certified_minus_two()))[0]
    assert signature(comp.gram()) == (0, 8, 1)
    # drop one node: finite E8, negative definite
    sub = [c for c in e8.certified_minus_two() if c.label != "R8"]
    finite = connected_components(dual_graph(sub))[0]
    assert signature(finite.gram()) == (0, 8, 0)
    t = dynkin_classify(finite)
    assert (t.series, t.extended, t.rank) == ("E", False, 8)


def config_graph(n, weighted_edges):
    """A (-2)-configuration with prescribed pairings, realized on a synthetic
    lattice whose Gram matrix is the configuration itself."""
    from picardcones.lattice import IntersectionLattice

    gram = [[-2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j, w in weighted_edges:
        gram[i][j] = gram[j][i] = w
    lat = IntersectionLattice(n, tuple(map(tuple, gram)), (0,) * n,
                              hyperbolic_required=False, rational_surface=False)
    classes = []
    for i in range(n):
        coords = [0] * n
        coords[i] = 1
        classes.append(curve(lat.divisor(coords), certified=True, label=f"v{i}"))
    return dual_graph(classes)


def path_edges(n):
    return [(i, i + 1, 1) for i in range(n - 1)]


def classify_shape(n, edges):
    return dynkin_classify(config_graph(n, edges))


def test_affine_a1_double_bond():
    t = classify_shape(2, [(0, 1, 2)])
    assert (t.series, t.extended, t.rank) == ("A", True, 1)


def test_cycles_are_extended_a():
    for n in (3, 4, 7):
        edges = path_edges(n) + [(n - 1, 0, 1)]
        t = classify_shape(n, edges)
        assert (t.series, t.extended, t.rank) == ("A", True, n - 1)


def test_d_series():
    # finite D_n: fork at one end of a path
    t = classify_shape(5, path_edges(4) + [(1, 4, 1)])
    assert (t.series, t.extended, t.rank) == ("D", False, 5)
    # extended D_4: star with four leaves
    t = classify_shape(5, [(0, 1, 1), (0, 2, 1), (0, 3, 1), (0, 4, 1)])
    assert (t.series, t.extended, t.rank) == ("D", True, 4)
    # extended D_5: forks at both ends
    edges = [(0, 2, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (3, 5, 1)]
    t = classify_shape(6, edges)
    assert (t.series, t.extended, t.rank) == ("D", True, 5)


def arm_tree(arms):
    """Star with given arm lengths: node 0 is the center."""
    edges = []
    nxt = 1
    for length in arms:
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt, 1))
            prev = nxt
            nxt += 1
    return nxt, edges


@pytest.mark.parametrize("arms,expected", [
    ((1, 2, 2), ("E", False, 6)),
    ((1, 2, 3), ("E", False, 7)),
    ((1, 2, 4), ("E", False, 8)),
    ((2, 2, 2), ("E", True, 6)),
    ((1, 3, 3), ("E", True, 7)),
    ((1, 2, 5), ("E", True, 8)),
    ((1, 1, 3), ("D", False, 6)),
])
def test_e_and_d_star_shapes(arms, expected):
    n, edges = arm_tree(arms)
    t = classify_shape(n, edges)
    assert (t.series, t.extended, t.rank) == expected


def test_unrecognized_shapes():
    # triple bond is indefinite
    assert classify_shape(2, [(0, 1, 3)]) is None
    # T(3,3,4) star: hyperbolic, no fiber type
    n, edges = arm_tree((2, 2, 3))
    assert classify_shape(n, edges) is None
    # degree-5 star
    assert classify_shape(6, [(0, i, 1) for i in range(1, 6)]) is None
    # cycle with a tail
    assert classify_shape(4, path_edges(3) + [(2, 0, 1), (2, 3, 1)]) is None


def test_extended_shapes_are_semidefinite_with_kernel():
    # the quadratic-form counterpart of the graph recognition
    shapes = [
        (2, [(0, 1, 2)]),
        (3, path_edges(3) + [(2, 0, 1)]),
        (5, [(0, 1, 1), (0, 2, 1), (0, 3, 1), (0, 4, 1)]),
        arm_tree((2, 2, 2)),
        arm_tree((1, 3, 3)),
        arm_tree((1, 2, 5)),
    ]
    for n, edges in shapes:
        g = config_graph(n, edges)
        t = dynkin_classify(g)
        assert t is not None and t.extended
        assert signature(g.gram()) == (0, n - 1, 1)


def test_finite_shapes_are_negative_definite():
    shapes = [(1, []), (4, path_edges(4)), (5, path_edges(4) + [(1, 4, 1)]),
              arm_tree((1, 2, 2)), arm_tree((1, 2, 3)), arm_tree((1, 2, 4))]
    for n, edges in shapes:
        g = config_graph(n, edges)
        t = dynkin_classify(g)
        assert t is not None and not t.extended
        assert signature(g.gram()) == (0, n, 0)


def test_dynkin_rejects_disconnected():
    hesse = load_surface("hesse_a2x4")
    g = dual_graph(hesse.certified_minus_two())
    with pytest.raises(LatticeError):
        dynkin_classify(g)
