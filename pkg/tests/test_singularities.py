from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ovalsieve.congruence import theorem1_verdict
from ovalsieve.enumerator import canonical_strings, harnack_bound
from ovalsieve.errors import EvenSequence, InputError, NonOrientablePlus
from ovalsieve.scheme import PlaneScheme, labelings, parse_plane_scheme, parse_scheme, plane_euler_parts
from ovalsieve.singularities import (
    CUSP_ARF,
    A1Input,
    MultiplicitySequence,
    PlaneClass,
    arf_of_sequence,
    is_odd_sequence,
    prop_a1_verdict,
    prop_a2_required_residues,
    prop_a2_verdict,
    rokhlin_residue,
    sum_arf,
)
from ovalsieve.verdict import Status

odd = st.integers(0, 40).map(lambda k: 2 * k + 1)


@pytest.mark.parametrize("seq, arf", [([3], 1), ([5], 1), ([3, 5], 0), ([1], 0), ([], 0), ([7], 0), ([3, 3], 0)])
def test_arf_values(seq, arf):
    assert arf_of_sequence(seq) == arf


def test_sequences():
    assert is_odd_sequence([3]) and is_odd_sequence([]) and not is_odd_sequence([2])
    with pytest.raises(EvenSequence):
        arf_of_sequence([3, 2])
    with pytest.raises(InputError):
        MultiplicitySequence((0,))
    with pytest.raises(InputError):
        MultiplicitySequence.parse("3,x")
    assert MultiplicitySequence.parse(" 3,5 ").s == (3, 5)
    assert CUSP_ARF == 1


@given(st.lists(odd, max_size=6))
def test_rokhlin_form_agrees(seq):
    assert rokhlin_residue(seq) == 8 * arf_of_sequence(seq)


@given(st.lists(odd, max_size=4), st.lists(odd, max_size=4))
def test_arf_is_additive_over_rounds(a, b):
    assert arf_of_sequence(a + b) == (arf_of_sequence(a) + arf_of_sequence(b)) % 2
    assert sum_arf([a, b, 1]) == (arf_of_sequence(a) + arf_of_sequence(b) + 1) % 2


# -- plane curves with imaginary singular points ------------------------------------------------------------------


def a1(k, chi, cls="M", ar=0) -> Status:
    return prop_a1_verdict(A1Input(k, chi, True, PlaneClass(cls), ar)).status


def test_a1_examples():
    assert a1(1, plane_euler_parts(parse_plane_scheme("1"))[1].chi) is Status.NO_CONSTRAINT
    assert a1(2, plane_euler_parts(parse_plane_scheme("3+1<1>"))[1].chi) is Status.PROHIBITED
    assert a1(2, plane_euler_parts(parse_plane_scheme("4"))[1].chi) is Status.NO_CONSTRAINT
    assert a1(3, 1, ar=1) is Status.PROHIBITED
    with pytest.raises(NonOrientablePlus):
        prop_a1_verdict(A1Input(2, -2, False, PlaneClass.M))


@given(st.integers(1, 12), st.integers(-40, 40), st.integers(0, 1))
def test_clause_c_contains_clause_a(k, chi, ar):
    if a1(k, chi, "M", ar) is Status.NO_CONSTRAINT:
        assert a1(k, chi, "M-2-typeII", ar) is Status.NO_CONSTRAINT


@pytest.mark.parametrize("text", ["0", "1", "4", "3+1<1>", "1<1<1>>+2", "9+1<1>"])
def test_exactly_one_orientable_plane_part(text):
    parts = plane_euler_parts(parse_plane_scheme(text))
    assert sorted(p.orientable for p in parts) == [False, True]
    assert sum(p.chi for p in parts) == 1


# -- corrected residues ------------------------------------------------------------------


@pytest.mark.parametrize(
    "k, beta, b, ar, clause, expected",
    [(3, 1, 0, 1, "a", (8, {6})), (1, 0, 0, 0, "d", (4, {1})), (2, 7, 1, 0, "b", (8, {3, 5}))],
)
def test_a2_residues(k, beta, b, ar, clause, expected):
    assert prop_a2_required_residues(k, beta, b, ar, clause) == expected


def test_a2_verdict_and_errors():
    assert prop_a2_verdict(3, 6, 1, 0, 1, "a").status is Status.NO_CONSTRAINT
    assert prop_a2_verdict(3, 5, 1, 0, 1, "a").status is Status.PROHIBITED
    with pytest.raises(InputError):
        prop_a2_required_residues(1, 0, 0, 0, "e")


def test_a2_with_zero_corrections_is_a1():
    for k in range(1, 6):
        for clause, cls in zip("abcd", PlaneClass):
            for chi in range(-10, 11):
                for ar in (0, 1):
                    mod, allowed = prop_a2_required_residues(k, 0, 0, ar, clause)
                    assert (chi % mod in allowed) == (a1(k, chi, cls.value, ar) is Status.NO_CONSTRAINT)


# -- the odd-degree ellipsoid congruences come out of the plane congruence -------------------------------
#
# Projecting a (d, d) curve from a real point of the ellipsoid gives a plane
# curve of degree 2d with one conjugate pair of ordinary d-fold points, so
# k = d and Ar = Arf([d]).  The half not containing the centre keeps its
# Euler characteristic and becomes the orientable part of the plane.


@pytest.mark.parametrize("d", [3, 5, 7])
def test_residues_match_the_ellipsoid_congruences(d):
    ar = arf_of_sequence([d])
    r = (d * d + 1) // 2
    m_set = {x for x in range(8) if a1(d, x, "M", ar) is Status.NO_CONSTRAINT}
    assert m_set == {r % 8}
    m1_set = {x for x in range(8) if a1(d, x, "M-1", ar) is Status.NO_CONSTRAINT}
    assert m1_set == {(r - 1) % 8, (r + 1) % 8}
    m2_set = {x for x in range(8) if a1(d, x, "M-2-typeII", ar) is Status.NO_CONSTRAINT}
    assert (r - 4) % 8 not in m2_set
    assert m2_set == {r % 8, (r + 2) % 8, (r - 2) % 8}
    t1_set = {x for x in range(4) if a1(d, x, "typeI", ar) is Status.NO_CONSTRAINT}
    assert t1_set == {1}


@pytest.mark.parametrize("d", [3, 5])
def test_m_curve_verdicts_agree_scheme_by_scheme(d):
    ar = arf_of_sequence([d])
    l = harnack_bound(d)
    names = canonical_strings(l) if l <= 12 else [
        "1+1<15>", "2+1<14>", "3+1<13>", "1+1<6>+1<8>", "1+1<5>+1<9>", "17", "1<16>"]
    for name in names:
        s = parse_scheme(name)
        via_a1 = any(all(a1(d, chi, "M", ar) is Status.NO_CONSTRAINT for chi in (lab.chi0, lab.chi1))
                     for lab in labelings(s))
        assert via_a1 == (theorem1_verdict(s, d).status is Status.NO_CONSTRAINT), name


def test_plane_scheme_root_is_outer():
    p = PlaneScheme((-1, 0, 1))
    non, ori = plane_euler_parts(p)
    assert 0 in non.regions
