from fractions import Fraction as F

import pytest

from drgfeas.arith import QuadraticNumber, quad
from drgfeas.arrays import parse_array
from drgfeas.feasibility import NO_RULES, load_rules
from drgfeas.shilla import (
    InvalidParams,
    ShillaParams,
    eq2_lhs,
    family_array,
    is_qpoly_closed,
    krein_bound,
    m1_closed_form,
    qpoly_candidates,
    qpoly_raw_candidates,
    qpoly_window,
    search_bound_a3,
    shilla_array,
    shilla_constraints,
    shilla_params,
    shilla_spectrum,
)
from drgfeas.spectrum import spectrum


@pytest.mark.parametrize("text, params", [
    ("{42,30,12;1,6,28}", (3, 14, 6, 12)),
    ("{6,4,2;1,2,3}", (2, 3, 2, 2)),
    ("{4,3,3;1,1,2}", (2, 2, 1, 3)),
    ("{120,117,20;1,1,108}", (10, 12, 1, 20)),
])
def test_params_round_trip(text, params):
    arr = parse_array(text)
    p = shilla_params(arr)
    assert p == ShillaParams(*params)
    assert shilla_array(p) == arr


def test_non_shilla_and_wrong_diameter():
    assert shilla_params(parse_array("{44,30,5;1,3,40}")) is None
    with pytest.raises(ValueError):
        shilla_params(parse_array("{3,2;1,1}"))


def test_invalid_params_name_the_inequality():
    with pytest.raises(InvalidParams, match="monotone-c: c2=9 vs c3=8"):
        shilla_array(ShillaParams(3, 4, 9, 9))
    with pytest.raises(InvalidParams):
        shilla_array(ShillaParams(1, 4, 1, 1))


def test_spectrum_examples():
    sp = shilla_spectrum(ShillaParams(3, 14, 6, 12))
    assert (sp.theta2, sp.theta3, sp.m1, sp.m2, sp.m3) == (0, -7, 42, 210, 90)
    sp = shilla_spectrum(ShillaParams(2, 2, 1, 3))
    assert (sp.theta2, sp.theta3, sp.m1, sp.m2, sp.m3) == (-1, -3, 14, 14, 6)
    sp = shilla_spectrum(ShillaParams(5, 10, 5, 5))
    assert isinstance(sp.theta3, QuadraticNumber)
    assert sp.theta2 == sp.theta3.conjugate()
    assert sp.m2 == sp.m3 == 220


def test_m1_closed_form_matches_general_formula():
    for params in [(3, 14, 6, 12), (2, 9, 4, 4), (10, 12, 1, 20), (3, 7, 4, 8)]:
        p = ShillaParams(*params)
        assert m1_closed_form(p) == spectrum(shilla_array(p)).multiplicities[1]
    # the Q-poly family for b = 3 has m1 = 60 - 108/c2
    for c2 in (6, 12):
        p = next(q for q in qpoly_raw_candidates(3) if q.c2 == c2)
        assert m1_closed_form(p) == 60 - F(108, c2)


def test_eq2_examples():
    assert eq2_lhs(5, 10, 5, 5) == 0
    assert eq2_lhs(10, 12, 1, 20) == 0
    assert eq2_lhs(3, 14, 6, 12) != 0


def test_constraint_report_small_b2_case():
    rep = shilla_constraints(ShillaParams(2, 3, 1, 1))
    assert rep.spectrum.theta3 == quad(F(-1, 2), F(-1, 2), 13)
    assert rep.verdict("theta3-window").passed
    assert all(v.passed for v in rep.verdicts if v.name.startswith("div-i"))


def test_qpoly_array_report():
    rep = shilla_constraints(ShillaParams(3, 14, 6, 12))
    assert rep.qpoly and not rep.failures
    assert krein_bound(rep.params) == -7 and is_qpoly_closed(rep.params, -7)
    assert rep.verdict("qpoly-window").passed


def test_search_bounds():
    assert search_bound_a3(3) == 1295
    assert search_bound_a3(2) == 143
    assert search_bound_a3(3, assume_qpoly_handled=False) == 4 * 3**9 - 1


def test_qpoly_window():
    assert list(qpoly_window(2)) == [-3]
    assert list(qpoly_window(3)) == [-8, -7, -6]


def test_qpoly_candidates_b3():
    arrays = {str(shilla_array(p)) for p in qpoly_candidates(3, load_rules())}
    assert arrays == {"{42,30,12;1,6,28}", "{105,72,24;1,12,70}"}
    unruled = {str(shilla_array(p)) for p in qpoly_candidates(3, NO_RULES)}
    assert unruled == arrays | {"{21,16,8;1,4,14}"}


def test_family_array():
    assert str(family_array(4)) == "{24,21,3;1,3,18}"
    assert str(family_array(5)) == "{50,44,5;1,5,40}"
    assert family_array(6) is None and family_array(7) is None
