from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from picardcones.builder import BlowupSpec, General, build_lattice
from picardcones.lattice import (DivisorClass, IntersectionLattice,
                                 LatticeError, arithmetic_genus,
                                 in_light_halfcone, k_degree, pair,
                                 primitive_generator, rr_chi,
                                 self_intersection)
from picardcones.linalg import signature
from picardcones.surfaces import load_surface


def plane_lattice(r):
    lat, _ = build_lattice(BlowupSpec("plane", tuple([General()] * r)))
    return lat


QUARTIC = load_surface("quartic_blowup").lattice
BL1 = plane_lattice(1)


def test_pair_quartic_isotropic():
    c = QUARTIC.divisor([1, -2])
    assert pair(c, c) == 0


def test_pair_zero_class():
    d = BL1.divisor([2, 5])
    assert pair(d, BL1.zero) == 0


def test_pair_bl1_example():
    assert pair(BL1.divisor([1, 2]), BL1.divisor([0, 1])) == -2


def test_pair_lattice_mismatch():
    with pytest.raises(LatticeError):
        pair(BL1.divisor([1, 0]), QUARTIC.divisor([1, 0]))


def test_k_degree_cubic_pencil():
    lat = plane_lattice(9)
    assert k_degree(lat.minus_k) == 0


def test_k_degree_zero():
    assert k_degree(BL1.zero) == 0


def test_k_degree_dp6():
    lat = plane_lattice(6)
    assert k_degree(lat.minus_k) == -3  # K^2 = 9 - r


def test_genus_exceptional():
    assert arithmetic_genus(BL1.divisor([0, 1])) == 0


def test_genus_elliptic_fiber():
    lat = plane_lattice(9)
    assert arithmetic_genus(lat.minus_k) == 1


def test_genus_line():
    p2 = plane_lattice(0)
    assert arithmetic_genus(p2.divisor([1])) == 0


def test_genus_rejects_non_integral():
    with pytest.raises(LatticeError):
        arithmetic_genus(BL1.divisor([Fraction(1, 2), 0]))


def test_rr_chi_structure_sheaf():
    assert rr_chi(BL1.zero) == 1


def test_rr_chi_pencil_of_lines():
    assert rr_chi(BL1.divisor([1, 0])) == 3


def test_rr_chi_dp6_anticanonical():
    lat = plane_lattice(6)
    assert rr_chi(lat.minus_k) == 4


def test_rr_chi_needs_rational_flag():
    with pytest.raises(LatticeError):
        rr_chi(QUARTIC.divisor([1, 0]))


def test_light_halfcone_examples():
    ample = BL1.divisor([2, -1])
    assert in_light_halfcone(BL1.divisor([1, -1]), ample)
    assert not in_light_halfcone(BL1.divisor([0, 1]), ample)
    assert in_light_halfcone(QUARTIC.divisor([1, -2]), QUARTIC.divisor([1, 0]))


def test_light_halfcone_zero_excluded():
    assert not in_light_halfcone(BL1.zero, BL1.divisor([2, -1]))


def test_light_halfcone_rejects_isotropic_reference():
    with pytest.raises(LatticeError):
        in_light_halfcone(BL1.divisor([1, 0]), BL1.divisor([1, -1]))


def test_primitive_generator():
    a, d = primitive_generator(3 * BL1.divisor([1, -1]))
    assert a == 3 and tuple(d.coords) == (1, -1)
    a, d = primitive_generator(QUARTIC.divisor([1, -2]))
    assert a == 1 and tuple(d.coords) == (1, -2)
    a, d = primitive_generator(Fraction(3, 2) * BL1.divisor([1, -1]))
    assert a == Fraction(3, 2) and tuple(d.coords) == (1, -1)


def test_primitive_generator_rejects_zero_and_nonisotropic():
    with pytest.raises(LatticeError):
        primitive_generator(BL1.zero)
    with pytest.raises(LatticeError):
        primitive_generator(BL1.divisor([1, 0]))


def test_lattice_invariants_reject_bad_input():
    with pytest.raises(LatticeError):
        IntersectionLattice(2, ((1, 1), (0, -1)), (-3, 1))  # asymmetric
    with pytest.raises(LatticeError):
        IntersectionLattice(2, ((1, 0), (0, 1)), (-3, 1))  # wrong signature
    with pytest.raises(LatticeError):
        IntersectionLattice(2, ((1, 0), (0, -1)), (0, 0))  # parity broken


def test_hyperbolic_signature_by_diagonalization():
    for r in range(0, 9):
        lat = plane_lattice(r)
        assert signature(lat.gram) == (1, r, 0)


rational = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@given(st.lists(rational, min_size=5, max_size=5),
       st.lists(rational, min_size=5, max_size=5),
       st.lists(rational, min_size=5, max_size=5),
       rational, rational)
def test_pair_bilinear_symmetric(u, v, w, a, b):
    lat = plane_lattice(4)
    du, dv, dw = lat.divisor(u), lat.divisor(v), lat.divisor(w)
    assert pair(du, dv) == pair(dv, du)
    lhs = pair(a * du + b * dv, dw)
    assert lhs == a * pair(du, dw) + b * pair(dv, dw)


@given(st.lists(st.integers(min_value=-20, max_value=20), min_size=7, max_size=7))
def test_genus_always_integer(coords):
    lat = plane_lattice(6)
    d = lat.divisor(coords)
    val = 1 + Fraction(self_intersection(d) + k_degree(d), 2)
    assert val.denominator == 1


@given(st.lists(rational, min_size=5, max_size=5))
def test_rr_chi_serre_symmetry(coords):
    # chi(D) = chi(K - D) is an algebraic identity of the formula
    lat = plane_lattice(4)
    d = lat.divisor(coords)
    assert rr_chi(d) == rr_chi(lat.k - d)
