from __future__ import annotations

import json
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ovalsieve.errors import (
    ArrangementError,
    DivisibilityViolated,
    IndexInconsistent,
    InputError,
    NonBipartite,
    NotSpin,
    OddBidegree,
)
from ovalsieve.hyperboloid import (
    B11Input,
    SeparationInput,
    arrangement_from_json,
    b11_constant,
    check_b4_b7,
    check_b10,
    euler_integral,
    eval_b11,
    eval_separation,
    index_function,
    load_arrangement,
    make_arrangement,
    netsvetaev_b12,
    representative,
    torus_harnack,
)
from ovalsieve.verdict import Status

DATA = Path(__file__).parent / "data"
P, T1, NC, HNS = Status.PROHIBITED, Status.TYPE_I_ONLY, Status.NO_CONSTRAINT, Status.HYPOTHESIS_NOT_SATISFIED


# random signed forests rendered in the oriented notation
forest = st.recursive(
    st.just([]),
    lambda kids: st.lists(st.tuples(st.sampled_from([1, -1]), kids), max_size=3),
    max_leaves=8,
)


def render(f) -> str:
    if not f:
        return "0"
    parts = []
    for sign, inside in f:
        suffix = "^+" if sign > 0 else "^-"
        parts.append(f"1{suffix}" + (f"<{render(inside)}>" if inside else ""))
    return "+".join(parts)


def integral(notation: str, bidegree=(2, 2), symmetric=False) -> int:
    return euler_integral(make_arrangement(annuli=[notation], bidegree=bidegree), symmetric=symmetric)


# -- index function and the integral ---------------------------------------------------


@pytest.mark.parametrize(
    "notation, value", [("0", 0), ("1^+", 1), ("1^-", 9), ("1^+<1^+>", 4), ("2^+", 2), ("1^+<1^->", 0)],
)
def test_integral_examples(notation, value):
    assert integral(notation) == value


def test_index_values():
    arr = make_arrangement(annuli=["1^+<1^+>"])
    assert index_function(arr).ind == {"a0": 0, "a0/0": 1, "a0/0/0": 2}
    assert arr.regions == {"a0": -1, "a0/0": 0, "a0/0/0": 1}


def test_symmetric_representatives():
    # three nested positive ovals reach index 3
    assert integral("1^+<1^+<1^+>>") == 9
    assert integral("1^+<1^+<1^+>>", symmetric=True) == 1
    assert [representative(x, True) for x in range(4)] == [0, 1, 2, -1]


@given(forest)
def test_total_chi_is_zero(f):
    arr = make_arrangement(annuli=[render(f)])
    assert sum(arr.regions.values()) == 0


@given(forest, st.data())
def test_collar_pair_leaves_integral_unchanged(f, data):
    if not f:
        f = [(1, [])]
    base = integral(render(f))
    # wrap one top-level oval in two extra parallel copies with opposite signs
    j = data.draw(st.integers(0, len(f) - 1))
    sign, inside = f[j]
    wrapped = f[:j] + [(sign, [(-sign, [(sign, inside)])])] + f[j + 1:]
    assert integral(render(wrapped)) == base


@given(forest)
def test_rebasing_shifts_the_index(f):
    arr = make_arrangement(annuli=[render(f)])
    ia = index_function(arr)
    for region in arr.regions:
        other = index_function(make_arrangement(annuli=[render(f)], base=region))
        assert all((other.ind[r] - ia.ind[r] + ia.ind[region]) % 4 == 0 for r in arr.regions)


def test_nonshrinking_components():
    arr = make_arrangement((1, 0), [1, 1, 1, 1], ["0"] * 4, (2, 2))
    ia = index_function(arr)
    assert [ia.ind[f"a{i}"] for i in range(4)] == [0, 1, 2, 3]
    assert ia.l_prime == 4 and arr.l == 4
    with pytest.raises(IndexInconsistent) as info:
        index_function(make_arrangement((1, 0), [1, 1], ["0", "0"], (2, 2)))
    assert info.value.cycle[0] == info.value.cycle[-1]


def test_arrangement_validation():
    with pytest.raises(ArrangementError):
        make_arrangement((0, 0), [1, -1], ["0", "0"])
    with pytest.raises(ArrangementError):
        make_arrangement((2, 2), [1, -1], ["0", "0"])
    with pytest.raises(ArrangementError):
        make_arrangement((1, 0), [1, -1], ["0"])
    with pytest.raises(ArrangementError):
        make_arrangement(annuli=["1^+"], base="a0/5")
    with pytest.raises(InputError):
        make_arrangement(annuli=["1"])


# -- B4 to B7 -----------------------------------------------------------------


def by_name(checks):
    return {c.prop: c for c in checks}


def test_b4_b7_two_ovals_pass():
    c = by_name(check_b4_b7(make_arrangement(annuli=["2^+"], bidegree=(2, 2))))
    assert c["B4"].passed and c["B6"].passed and c["B7"].passed
    assert not c["B5"].applicable


def test_b4_fails_for_nested_pair():
    c = by_name(check_b4_b7(make_arrangement(annuli=["1^+<1^+>"], bidegree=(2, 2))))
    assert c["B4"].applicable and c["B4"].passed is False


def test_b5_gating():
    # l' = 4, ds + rt = 2 mod 4
    arr = make_arrangement((1, 0), [1, 1, 1, 1], ["0"] * 4, (2, 2))
    c = by_name(check_b4_b7(arr))
    assert c["B5"].applicable
    assert c["B5"].passed == ((euler_integral(arr) - (2 + 4)) % 8 == 0)
    assert not c["B4"].applicable


def test_odd_dr_disables_checks():
    assert not any(c.applicable for c in check_b4_b7(make_arrangement(annuli=["2^+"], bidegree=(1, 3))))


# -- B10 -----------------------------------------------------------------------


def test_b10_worked_example():
    arr = load_arrangement(DATA / "b10_example.json")
    v = check_b10(arr)
    assert v.status is P
    assert sorted(v.reasons[0].residues["parts"]) == [-2, 2]


def test_b10_hypothesis_and_errors():
    assert check_b10(make_arrangement(annuli=["2^+"], bidegree=(2, 2))).status is HNS
    with pytest.raises(OddBidegree):
        check_b10(make_arrangement(annuli=["2^+"], bidegree=(3, 2)))
    with pytest.raises(NonBipartite):
        check_b10(make_arrangement((1, 0), [1], ["0"], (2, 4)))


def test_b10_type_i_clause_d():
    arr = make_arrangement((1, 0), [1, -1], ["0", "0"], (2, 4), curve_type="I")
    v = check_b10(arr)
    d = [r for r in v.reasons if r.clause == "B10.d"][0]
    assert d.status is NC and d.residues["parts"] == [0, 0]


def test_b10_labelings_flag():
    arr = load_arrangement(DATA / "b10_example.json")
    assert check_b10(arr, 0).status is check_b10(arr, 1).status is P
    assert torus_harnack(2, 4) == 4


# -- files -----------------------------------------------------------------------


def test_json_schema():
    good = {"schema_version": 1, "bidegree": [2, 2], "ovals_notation": "1^+"}
    assert arrangement_from_json(good).oval_count == 1
    for bad in [{"bidegree": [2]}, {**good, "extra": 1}, {**good, "annuli": ["0"]}, {**good, "schema_version": 2},
                {**good, "components": [2]}]:
        with pytest.raises(ArrangementError):
            arrangement_from_json(bad)


def test_load_errors(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(ArrangementError) as info:
        load_arrangement(p)
    assert "line 1" in str(info.value)
    with pytest.raises(ArrangementError):
        load_arrangement(DATA / "malformed.json")


def test_shipped_examples_load():
    for path in DATA.glob("*.json"):
        if path.stem == "malformed":
            continue
        data = json.loads(path.read_text())
        arrangement_from_json(data)


# -- separation congruences ----------------------------------------------------------


@pytest.mark.parametrize(
    "mode, chi, sigma, status", [("B2", 2, 2, NC), ("B2", 2, -30, NC), ("B3", 4, 2, P), ("B3", 10, 2, NC)],
)
def test_b2_b3(mode, chi, sigma, status):
    assert eval_separation(SeparationInput(chi, sigma, connected=True), mode).status is status


def test_b1_b8():
    assert eval_separation(SeparationInput(6, 2, chi_part=1, beta=0), "B1").status is NC
    assert eval_separation(SeparationInput(6, 2, chi_part=2, beta=0), "B1").status is P
    assert eval_separation(SeparationInput(6, 2, chi_part=3, beta=0, e_A=8), "B8").status is NC
    with pytest.raises(DivisibilityViolated):
        eval_separation(SeparationInput(5, 2, chi_part=1, beta=0), "B1")
    with pytest.raises(DivisibilityViolated):
        eval_separation(SeparationInput(6, 2, chi_part=1, beta=0, e_A=2), "B8")
    assert eval_separation(SeparationInput(2, 2), "B2").status is HNS
    with pytest.raises(InputError):
        eval_separation(SeparationInput(2, 2), "B9")


def test_b11():
    assert b11_constant([2, 4]) == 8
    assert eval_b11(B11Input((2, 4), 0, 0, 4)).status is P
    assert eval_b11(B11Input((2, 2), 1, 0, 3, b_minus_contractible=True)).status is NC
    assert eval_b11(B11Input((2, 4), 0, 0, 4, inj_zero=False)).status is HNS
    assert eval_b11(B11Input((2, 2), 0, 0, 2)).status is HNS
    assert eval_b11(B11Input((2, 4), 2, 0, 4)).status is T1
    with pytest.raises(DivisibilityViolated):
        b11_constant([2, 3])


def test_b12():
    assert netsvetaev_b12([2]) == 1
    assert netsvetaev_b12([2, 3]) == 0
    with pytest.raises(NotSpin):
        netsvetaev_b12([3])
