from fractions import Fraction as F

import pytest

from drgfeas.arrays import parse_array
from drgfeas.feasibility import (
    FEASIBLE,
    INFEASIBLE,
    MODULO_TERWILLIGER,
    NO_RULES,
    CliqueVerdict,
    RulesError,
    clique_coclique_condition,
    coclique_threshold,
    feasibility_check,
    intersection_numbers,
    load_rules,
    p_integrality,
    parity,
    parse_rules,
)

DIAMETER4_ARRAYS = [
    ("{81,56,24,1;1,3,56,81}", F(19, 6)),
    ("{117,80,30,1;1,6,80,117}", F(31, 6)),
    ("{117,80,32,1;1,4,80,117}", F(31, 6)),
    ("{189,128,45,1;1,9,128,189}", F(55, 6)),
]


def test_intersection_numbers_of_qpoly_array():
    arr = parse_array("{42,30,12;1,6,28}")
    p = intersection_numbers(arr)
    assert p[3][3] == (1, 14, 56, 19)
    assert p[1][1] == (1, 11, 30, 0)  # p^1_{1l} = (1, a1, b1, 0)
    assert p_integrality(arr).passed


def test_intersection_numbers_are_valencies_on_the_diagonal():
    arr = parse_array("{6,4,2;1,2,3}")
    p = intersection_numbers(arr)
    assert [p[0][j][j] for j in range(4)] == [1, 6, 12, 8]


def test_p_integrality_witness():
    v = p_integrality(parse_array("{676,675,31;1,9,650}"))
    assert not v.passed
    assert "/9" in v.witness


def test_parity():
    assert parity(parse_array("{4,3,3;1,1,2}")).passed
    # k a1 = 5 * 1 is odd
    v = parity(parse_array("{5,3;1,2}"))
    assert not v.passed and "k1*a1" in v.witness


@pytest.mark.parametrize("s, a1, k, expected", [
    (4, 13, 44, F(2)), (4, 20, 65, F(19, 6)), (3, 1, 6, F(0)),
])
def test_coclique_threshold(s, a1, k, expected):
    assert coclique_threshold(s, a1, k) == expected


def test_coclique_condition_arrays():
    r = clique_coclique_condition(parse_array("{44,30,5;1,3,40}"))
    assert r.verdict is CliqueVerdict.TERWILLIGER_REQUIRED
    assert r.alpha == 4 and r.threshold == 2 == r.lhs
    r = clique_coclique_condition(parse_array("{65,44,11;1,4,55}"))
    assert r.verdict is CliqueVerdict.FAIL
    assert r.threshold == F(19, 6) > r.lhs == 3


@pytest.mark.parametrize("text, threshold", DIAMETER4_ARRAYS)
def test_diameter4_arrays_fail(text, threshold):
    r = clique_coclique_condition(parse_array(text))
    assert r.verdict is CliqueVerdict.FAIL
    assert r.threshold == threshold


def test_clique_condition_needs_diameter_two():
    with pytest.raises(ValueError):
        clique_coclique_condition(parse_array("{5;1}"))


def test_full_report_known_feasible():
    rep = feasibility_check(parse_array("{42,30,12;1,6,28}"), load_rules())
    assert rep.overall == FEASIBLE and rep.reasons == []
    assert rep.multiplicities == (1, 42, 210, 90)


def test_full_report_multiplicity_failure():
    rep = feasibility_check(parse_array("{4,3,2;1,1,2}"))
    assert rep.overall == INFEASIBLE
    assert rep.reasons == ["multiplicity-integrality: m1 = 116/11"]


def test_terwilliger_case_with_and_without_rules():
    arr = parse_array("{44,30,5;1,3,40}")
    assert feasibility_check(arr, NO_RULES).overall == MODULO_TERWILLIGER
    rep = feasibility_check(arr, load_rules())
    assert rep.overall == INFEASIBLE
    assert rep.known_result.startswith("excluded-by")


def test_c2_one_never_needs_terwilliger():
    # Odd-4 meets the co-clique bound with equality but c2 = 1
    rep = feasibility_check(parse_array("{4,3,3;1,1,2}"), load_rules())
    assert rep.clique.verdict is CliqueVerdict.TERWILLIGER_REQUIRED
    assert rep.overall == FEASIBLE


def test_coolsaet_rule():
    arr = parse_array("{21,16,8;1,4,14}")
    assert feasibility_check(arr, NO_RULES).overall == FEASIBLE
    assert feasibility_check(arr, load_rules()).overall == INFEASIBLE


def test_rules_file_format(tmp_path):
    r = parse_rules("# c\n{4,3,3;1,1,2} mine  # note\nTERWILLIGER c2>=5 big\n")
    assert r.match(parse_array("{4,3,3;1,1,2}"), None) == "mine"
    assert r.terwilliger == ((5, "big"),)
    for bad in ("{4,3,3;1,1,2}", "{4,3;1} a b", "TERWILLIGER c2>x y", "nonsense"):
        with pytest.raises(RulesError):
            parse_rules(bad)


def test_rules_env_override(tmp_path, monkeypatch):
    f = tmp_path / "rules.txt"
    f.write_text("{42,30,12;1,6,28} pretend\n")
    monkeypatch.setenv("DRGFEAS_RULES", str(f))
    rep = feasibility_check(parse_array("{42,30,12;1,6,28}"), load_rules())
    assert rep.known_result == "pretend"
    with pytest.raises(RulesError):
        load_rules(tmp_path / "missing.txt")
