import pytest
from hypothesis import given
from hypothesis import strategies as st

from picardcones import tower
from picardcones.builder import (BlowupSpec, General, OnExceptional,
                                 OnTwoExceptionals, build_lattice,
                                 build_tower_surface, proximity_matrix,
                                 pullback, strict_exceptional,
                                 total_exceptional)
from picardcones.lattice import LatticeError, pair, self_intersection
from picardcones.linalg import signature


def test_plane_no_centers():
    lat, labels = build_lattice(BlowupSpec("plane"))
    assert lat.rank == 1 and lat.gram == ((1,),) and lat.canonical == (-3,)
    assert labels == ("H",)


def test_quartic_blowup_lattice():
    lat, _ = build_lattice(BlowupSpec("quartic_k3", (General(),)))
    assert lat.gram == ((4, 0), (0, -1))
    assert lat.canonical == (0, 1)
    assert not lat.rational_surface


def test_hirzebruch_k_square():
    lat, _ = build_lattice(BlowupSpec("hirzebruch", (), hirzebruch_n=2))
    assert self_intersection(lat.k) == 8


def test_plane_k_square_drops_per_center():
    for r in range(0, 9):
        lat, _ = build_lattice(BlowupSpec("plane", tuple([General()] * r)))
        assert self_intersection(lat.k) == 9 - r
        assert signature(lat.gram) == (1, r, 0)


def test_strict_exceptional_chain():
    spec = BlowupSpec("plane", (General(), OnExceptional(0)))
    assert tuple(strict_exceptional(spec, 0).coords) == (0, 1, -1)
    assert tuple(strict_exceptional(spec, 1).coords) == (0, 0, 1)


def test_strict_equals_total_for_isolated_center():
    spec = BlowupSpec("plane", (General(), General()))
    assert strict_exceptional(spec, 0) == total_exceptional(spec, 0)


def test_strict_exceptional_two_proximate_successors():
    spec = BlowupSpec("plane",
                      (General(), OnExceptional(0), OnTwoExceptionals(1, 0)))
    e0 = strict_exceptional(spec, 0)
    assert tuple(e0.coords) == (0, 1, -1, -1)
    assert self_intersection(e0) == -3


def test_proximity_row_sums():
    spec = BlowupSpec("plane",
                      (General(), OnExceptional(0), OnTwoExceptionals(1, 0)))
    prox = proximity_matrix(spec)
    assert prox == ((0, 0, 0), (1, 0, 0), (1, 1, 0))


def test_dual_graph_adjacency_from_proximity():
    # self-intersection drops by one per proximate successor; two strict
    # transforms meet once per proximity edge minus once per shared
    # successor (blowing up their intersection point separates them)
    spec = BlowupSpec("plane",
                      (General(), OnExceptional(0), OnTwoExceptionals(1, 0)))
    prox = proximity_matrix(spec)
    n = len(spec.centers)
    stricts = [strict_exceptional(spec, i) for i in range(n)]
    for i in range(n):
        successors = sum(prox[j][i] for j in range(n))
        assert self_intersection(stricts[i]) == -1 - successors
        for j in range(i + 1, n):
            shared = sum(1 for k in range(n) if prox[k][i] and prox[k][j])
            assert pair(stricts[i], stricts[j]) == prox[j][i] - shared


def test_spec_validation():
    with pytest.raises(LatticeError):
        BlowupSpec("plane", (OnExceptional(0),))  # refers to itself
    with pytest.raises(LatticeError):
        BlowupSpec("plane", (General(), OnTwoExceptionals(0, 0)))
    with pytest.raises(LatticeError):
        BlowupSpec("quartic_k3", (General(), General()))
    with pytest.raises(LatticeError):
        BlowupSpec("banana")


def test_pullback_orthogonal_to_exceptionals():
    base, _ = build_lattice(BlowupSpec("plane"))
    ext, _ = build_lattice(BlowupSpec("plane", (General(), General())))
    h = pullback(base.divisor([1]), ext)
    assert tuple(h.coords) == (1, 0, 0)
    assert self_intersection(h) == 1
    assert pair(h, ext.divisor([0, 1, 0])) == 0


def test_pullback_rejects_mismatched_block():
    quartic, _ = build_lattice(BlowupSpec("quartic_k3", (General(),)))
    plane, _ = build_lattice(BlowupSpec("plane"))
    with pytest.raises(LatticeError):
        pullback(plane.divisor([1]), quartic)


rational = st.fractions(min_value=-4, max_value=4, max_denominator=4)


@given(st.lists(rational, min_size=2, max_size=2),
       st.lists(rational, min_size=2, max_size=2))
def test_pullback_isometric(u, v):
    base, _ = build_lattice(BlowupSpec("hirzebruch", (), hirzebruch_n=2))
    ext, _ = build_lattice(BlowupSpec("hirzebruch", (General(), General()),
                                      hirzebruch_n=2))
    du, dv = base.divisor(u), base.divisor(v)
    assert pair(pullback(du, ext), pullback(dv, ext)) == pair(du, dv)


# the geometric tower and the arithmetic recursion must tell the same story


@pytest.mark.parametrize("variant,expected", [
    ("triple", (3, 4, 7, 11)),
    ("node", (2, 3, 5, 8)),
])
def test_tower_multiplicities_match_recursion(variant, expected):
    ts = build_tower_surface(variant, 4)
    assert ts.multiplicities == expected
    arith = "triple" if variant == "triple" else "node"
    state = tower.tower_init(arith)
    seq = [state.a_prev, state.a_cur]
    for _ in range(2):
        state = tower.tower_step(state)
        seq.append(state.a_cur)
    assert tuple(seq) == expected


def test_tower_lattice_shape():
    ts = build_tower_surface("triple", 2)
    assert ts.lattice.rank == 12
    assert self_intersection(ts.lattice.k) == -2
    fiber = ts.lattice.divisor(ts.fiber_class)
    assert self_intersection(fiber) == 0
    # every certified curve is an integral negative class
    for c in ts.curves:
        d = ts.lattice.divisor(c.coords)
        assert self_intersection(d) < 0
    # fiber components are orthogonal to the fiber class
    for c in ts.curves:
        if c.fiber_multiplicity:
            assert pair(fiber, ts.lattice.divisor(c.coords)) == 0


def test_tower_center_spec_matches_construction():
    ts = build_tower_surface("triple", 3)
    tail = ts.spec.centers[9:]
    assert tail == (General(), OnExceptional(9), OnTwoExceptionals(10, 9))
