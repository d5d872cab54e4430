from fractions import Fraction as F

import pytest

from drgfeas.arith import Interval, IsolatedRoot, QuadraticNumber, compare, poly_mul, primitive, quad
from drgfeas.arrays import parse_array
from drgfeas.spectrum import (
    eigenvalues,
    krein_tensor,
    multiplicity,
    positive_integer,
    q_poly_wrt_theta1,
    reduced_char_poly,
    spectrum,
    standard_sequence,
    theta1_lower_bound,
    trace_sums,
)

ODD4 = parse_array("{4,3,3;1,1,2}")
QP42 = parse_array("{42,30,12;1,6,28}")
FAM5 = parse_array("{50,44,5;1,5,40}")
H33 = parse_array("{6,4,2;1,2,3}")


def _monic(*roots):
    f = [1]
    for r in roots:
        f = poly_mul(f, [-r, 1])
    return primitive(f)


def test_reduced_char_poly():
    assert primitive(reduced_char_poly(ODD4)) == _monic(2, -1, -3)
    assert primitive(reduced_char_poly(QP42)) == _monic(14, 0, -7)


def test_eigenvalues_rational_and_quadratic():
    assert eigenvalues(ODD4) == (4, 2, -1, -3)
    assert eigenvalues(QP42) == (42, 14, 0, -7)
    assert eigenvalues(H33) == (6, 3, 0, -3)
    k, t1, t2, t3 = eigenvalues(FAM5)
    assert t1 == 10
    assert t3 == quad(F(-5, 2), F(-1, 2), 105)
    assert -7.624 < float(t3) < -7.622


def test_eigenvalues_distinct_and_k_largest_even_with_negative_a():
    # a1 = 5 - 4 - 3 < 0; the tridiagonal matrix is still a Jacobi matrix
    arr = parse_array("{5,4;1,3}")
    evs = eigenvalues(arr)
    assert evs[0] == 5
    assert all(compare(x, y) > 0 for x, y in zip(evs, evs[1:]))


def test_standard_sequences():
    assert standard_sequence(ODD4, 2).u == (1, F(1, 2), 0, F(-1, 6))
    assert standard_sequence(QP42, -7).u == (1, F(-1, 6), F(1, 15), F(-4, 45))
    assert standard_sequence(QP42, 42).u == (1, 1, 1, 1)


def test_multiplicities():
    assert spectrum(ODD4).multiplicities == (1, 14, 14, 6)
    assert spectrum(QP42).multiplicities == (1, 42, 210, 90)
    assert spectrum(FAM5).multiplicities == (1, 105, 220, 220)
    assert multiplicity(QP42, 42) == 1


def test_conjugate_eigenvalues_share_multiplicity():
    sp = spectrum(FAM5)
    assert isinstance(sp.eigenvalues[2], QuadraticNumber)
    assert sp.multiplicities[2] == sp.multiplicities[3]
    assert abs(float(sp.eigenvalues[2]) + float(sp.eigenvalues[3]) + 5) < 1e-12


def test_cubic_eigenvalues_use_intervals():
    # the heptagon: eigenvalues 2cos(2πj/7) are cubic irrationals
    hept = parse_array("{2,1,1;1,1,1}")
    sp = spectrum(hept)
    assert not sp.exact
    assert all(isinstance(t, IsolatedRoot) for t in sp.eigenvalues[1:])
    for m in sp.multiplicities[1:]:
        assert isinstance(m, Interval)
        verdict = positive_integer(m)
        assert verdict.integral and verdict.value == 2 and verdict.certified == "interval"


def test_trace_identities_on_examples():
    for arr in (ODD4, QP42, FAM5, H33):
        sp = spectrum(arr)
        assert trace_sums(sp, 0) == sp.n
        assert trace_sums(sp, 1) == 0
        assert trace_sums(sp, 2) == sp.n * arr.k


def test_krein_tensor_examples():
    kt = krein_tensor(QP42)
    assert kt.exact
    assert kt(3, 1, 1) == 0
    assert kt.sign(2, 1, 1) > 0
    for k in range(4):
        for j in range(4):
            assert kt(k, 0, j) == (1 if j == k else 0)
    assert krein_tensor(ODD4).most_negative() is None


def test_krein_symmetry():
    for arr in (QP42, ODD4, FAM5):
        kt = krein_tensor(arr)
        for k in range(4):
            for i in range(4):
                for j in range(4):
                    assert kt(k, i, j) == kt(k, j, i)


def test_krein_violation_detected():
    # srg(28,9,0,4): integral multiplicities 21 and 6, but q^2_22 < 0
    kt = krein_tensor(parse_array("{9,8;1,4}"))
    assert kt.most_negative() == (F(-4, 9), (2, 2, 2))


def test_q_polynomial_detection():
    assert q_poly_wrt_theta1(QP42)
    assert not q_poly_wrt_theta1(FAM5)
    assert not q_poly_wrt_theta1(ODD4)
    with pytest.raises(ValueError):
        q_poly_wrt_theta1(parse_array("{3,2;1,1}"))


def test_theta1_lower_bound():
    assert theta1_lower_bound(ODD4) == 2
    assert theta1_lower_bound(QP42) == 14
    lb = theta1_lower_bound(parse_array("{44,30,5;1,3,40}"))
    assert compare(lb, eigenvalues(parse_array("{44,30,5;1,3,40}"))[1]) <= 0
