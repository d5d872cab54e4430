import pytest
from hypothesis import given, settings, strategies as st

from drgfeas.arrays import format_array, parse_array
from drgfeas.enumeration import (
    DEFAULT_FILTERS,
    CandidateCapExceeded,
    EnumerationQuery,
    Filter,
    _cubic_integer_roots,
    divisors_of_product,
    enumerate_shilla,
    eq2_in_b2,
    verify_list,
)
from drgfeas.feasibility import FEASIBLE, MODULO_TERWILLIGER, feasibility_check
from drgfeas.arith import poly_eval
from drgfeas.shilla import eq2_lhs


def test_divisors_of_product():
    assert divisors_of_product([4, 6], 100) == [1, 2, 3, 4, 6, 8, 12, 24]
    assert divisors_of_product([4, 6], 5) == [1, 2, 3, 4]
    assert divisors_of_product([1], 10) == [1]


@given(st.integers(2, 30), st.integers(2, 200), st.integers(1, 200), st.integers(1, 400))
def test_eq2_cubic_expansion(b, a3, c2, b2):
    f = eq2_in_b2(b, a3, c2)
    assert poly_eval(f, b2) == eq2_lhs(b, a3, c2, b2)


@settings(max_examples=300)
@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50),
       st.integers(-60, 0), st.integers(0, 60))
def test_cubic_integer_roots_match_brute_force(r1, r2, shift, lo, hi):
    # cubics with known integer roots plus a perturbation of the constant
    c2 = -(r1 + r2 + shift)
    c1 = r1 * r2 + r1 * shift + r2 * shift
    c0 = -r1 * r2 * shift
    for f in ((c0, c1, c2, 1), (c0 + 1, c1, c2, 1)):
        brute = [x for x in range(lo, hi + 1) if poly_eval(f, x) == 0]
        assert _cubic_integer_roots(f, lo, hi) == brute


def test_query_validation():
    with pytest.raises(ValueError):
        EnumerationQuery(1, 3)
    with pytest.raises(ValueError):
        EnumerationQuery(3, 3, a3_max=2)
    assert EnumerationQuery(3, 3).a3_limit(3) == 1295


def test_b2_smallest_case():
    r = enumerate_shilla(EnumerationQuery(2, 2, 2))
    assert r.arrays == ["{4,3,3;1,1,2}"]
    diff = verify_list(r, [parse_array("{4,3,1;1,1,2}")])
    assert diff.unexpected == [("{4,3,3;1,1,2}", "survived all filters: feasible")]
    assert diff.missing == [("{4,3,1;1,1,2}", "removed by multiplicity")]


def test_verify_list_against_empty_expectation():
    r = enumerate_shilla(EnumerationQuery(2, 2, 10))
    diff = verify_list(r, [])
    assert not diff.missing and len(diff.unexpected) == len(r.survivors) == 5
    assert all(line.startswith("+ ") for line in diff.lines())


def test_verify_list_reports_out_of_range():
    diff = verify_list(EnumerationQuery(2, 2, 4), [parse_array("{18,10,4;1,4,9}"),
                                                   parse_array("{3,2;1,1}")])
    reasons = dict(diff.missing)
    assert reasons["{18,10,4;1,4,9}"].startswith("outside query range")
    assert reasons["{3,2;1,1}"] == "not diameter 3"


def test_candidate_cap_carries_partial_result():
    with pytest.raises(CandidateCapExceeded) as info:
        enumerate_shilla(EnumerationQuery(3, 3, 200, candidate_cap=10))
    partial = info.value.partial
    assert partial.visited > 10
    assert "{12,10,5;1,1,8}" in partial.arrays


def test_survivors_are_sorted_and_feasible():
    r = enumerate_shilla(EnumerationQuery(2, 3, 40))
    keys = [s.params for s in r.survivors]
    assert keys == sorted(keys)
    for s in r.survivors:
        assert parse_array(format_array(s.array)) == s.array
        assert feasibility_check(s.array).overall in (FEASIBLE, MODULO_TERWILLIGER)
        assert s.feasibility.feasible


def test_determinism_across_runs_and_workers():
    q1 = EnumerationQuery(2, 4, 60)
    q2 = EnumerationQuery(2, 4, 60, jobs=2)
    r1, r2, r3 = enumerate_shilla(q1), enumerate_shilla(q1), enumerate_shilla(q2)
    assert r1.arrays == r2.arrays == r3.arrays
    assert r1.visited == r3.visited and r1.pruned == r3.pruned


@pytest.mark.parametrize("extra", [Filter.M2_EQ_M3, Filter.QPOLY])
def test_extra_filters_only_remove(extra):
    base = set(enumerate_shilla(EnumerationQuery(2, 5, 60)).arrays)
    narrowed = set(enumerate_shilla(EnumerationQuery(2, 5, 60, filters=DEFAULT_FILTERS | extra)).arrays)
    assert narrowed <= base


def test_dropping_filters_only_adds():
    full = set(enumerate_shilla(EnumerationQuery(2, 3, 30)).arrays)
    for f in (Filter.KREIN, Filter.CLIQUE, Filter.KNOWN, Filter.PARITY):
        wider = set(enumerate_shilla(EnumerationQuery(2, 3, 30, filters=DEFAULT_FILTERS & ~f)).arrays)
        assert full <= wider


def test_progress_callback():
    seen = []
    enumerate_shilla(EnumerationQuery(2, 2, 143), lambda v, s: seen.append((v, s)))
    assert seen and seen[-1][1] == 5
    assert [v for v, _ in seen] == sorted(v for v, _ in seen)
