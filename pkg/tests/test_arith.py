import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from drgfeas.arith import (
    ComplexRoots,
    Interval,
    InvalidInput,
    IsolatedRoot,
    QuadraticNumber,
    compare,
    count_roots,
    isolate_real_roots,
    poly_divmod,
    poly_eval,
    poly_gcd,
    poly_mul,
    quad,
    quadratic_roots,
    sign,
    squarefree_part,
    squarefree_split,
    sturm_sequence,
)


# -- square-free splitting ---------------------------------------------------

@pytest.mark.parametrize("n, expected", [
    (0, (0, 0)), (1, (1, 1)), (72, (6, 2)), (105, (1, 105)), (1000, (10, 10)),
])
def test_squarefree_split_examples(n, expected):
    assert squarefree_split(n) == expected


def test_squarefree_split_large_cofactor():
    p, q = 1_000_003, 1_000_033  # both prime and above the trial-division limit
    assert squarefree_split(p * p * q * 4) == (2 * p, q)
    assert squarefree_split(p * q) == (1, p * q)


def test_squarefree_split_rejects_negative():
    with pytest.raises(InvalidInput):
        squarefree_split(-5)


@given(st.integers(min_value=1, max_value=10**12))
def test_squarefree_split_reconstructs(n):
    f, s = squarefree_split(n)
    assert f * f * s == n
    assert all(s % (p * p) for p in range(2, min(math.isqrt(s), 2000) + 1))


# -- quadratic numbers -------------------------------------------------------

def test_quad_normalises_radicand():
    x = quad(0, 1, 8)
    assert x == QuadraticNumber(F(0), F(2), 2)
    assert quad(3, 5, 9) == 18  # collapses to a rational
    assert isinstance(quad(3, 5, 9), F)


def test_quadratic_field_operations():
    x = quad(1, 1, 8)  # 1 + 2√2
    assert x.norm() == -7
    assert x * x.conjugate() == -7
    assert x * x.inverse() == 1
    assert x.minimal_polynomial() == (-7, -2, 1)
    assert x ** 2 == quad(9, 4, 2)
    assert str(x) == "1 + 2*sqrt(2)"


def test_mixed_radicands_are_refused():
    with pytest.raises(InvalidInput):
        quad(0, 1, 2) + quad(0, 1, 3)


rationals = st.fractions(min_value=-50, max_value=50, max_denominator=30)
radicands = st.sampled_from([2, 3, 5, 6, 7, 10, 105, 221])


@given(rationals, rationals, radicands)
def test_norm_is_multiplicative_partner(p, q, d):
    x = quad(p, q, d)
    if isinstance(x, QuadraticNumber):
        assert x * x.conjugate() == x.norm() == p * p - q * q * d


@given(rationals, rationals, rationals, rationals, radicands)
def test_field_axioms(p1, q1, p2, q2, d):
    x, y = quad(p1, q1, d), quad(p2, q2, d)
    assert x * y == y * x
    assert (x + y) - y == x
    if sign(y) != 0:
        assert (x / y) * y == x


@given(rationals, rationals, radicands)
def test_sign_agrees_with_float(p, q, d):
    x = quad(p, q, d)
    v = float(x)
    if abs(v) > 1e-9:
        assert sign(x) == (1 if v > 0 else -1)


# -- polynomials and root isolation ------------------------------------------

def test_poly_helpers():
    f = poly_mul([-1, 1], [1, 1])  # x^2 - 1
    assert list(f) == [-1, 0, 1]
    q, r = poly_divmod(f, [-1, 1])
    assert list(q) == [1, 1] and not any(r)
    assert poly_gcd([-1, 0, 1], [1, 2, 1]) == (1, 1)
    assert squarefree_part([1, 2, 1]) == (1, 1)
    assert poly_eval([1, 2, 3], F(1, 2)) == F(11, 4)


def test_sturm_counts_roots_in_half_open_interval():
    seq = sturm_sequence([-1, 0, 1])
    assert count_roots(seq, F(-2), F(2)) == 2
    assert count_roots(seq, F(-1), F(1)) == 1  # (-1, 1] contains only 1


def test_isolate_quadratic_and_rational_roots():
    assert isolate_real_roots([-2, 0, 1]) == [quad(0, 1, 2), quad(0, -1, 2)]
    assert isolate_real_roots([0, -2, 0, 1]) == [quad(0, 1, 2), 0, quad(0, -1, 2)]
    assert isolate_real_roots([6, -5, 1]) == [3, 2]
    assert isolate_real_roots([1, 0, 1]) == []


def test_isolate_cubic_root():
    (r,) = isolate_real_roots([-2, 0, 0, 1])
    assert isinstance(r, IsolatedRoot)
    assert r.lo ** 3 < 2 < r.hi ** 3
    assert r.hi - r.lo < F(1, 2**70)
    assert compare(r, F(5, 4)) > 0
    assert compare(quad(0, 1, 2), r) > 0  # √2 > ∛2


def test_compare_recognises_equal_roots_of_different_polynomials():
    (r,) = isolate_real_roots([-2, 0, 0, 1])
    roots = [x for x in isolate_real_roots(poly_mul([-2, 0, 0, 1], [-3, 1]))
             if isinstance(x, IsolatedRoot)]
    assert compare(r, roots[0]) == 0


@settings(max_examples=200)
@given(st.lists(st.integers(-6, 6), min_size=1, max_size=4))
def test_root_reconstruction(rs):
    """Roots of a product of linear factors come back exactly, descending."""
    f = [1]
    for r in rs:
        f = poly_mul(f, [-r, 1])
    got = isolate_real_roots(f)
    assert got == sorted(set(rs), reverse=True)


@settings(max_examples=150)
@given(st.lists(st.integers(-20, 20), min_size=3, max_size=6).filter(lambda c: c[-1] != 0))
def test_isolated_roots_are_roots(coeffs):
    import sympy

    roots = isolate_real_roots(coeffs)
    x = sympy.Symbol("x")
    reference = set(sympy.real_roots(sum(c * x**i for i, c in enumerate(coeffs))))
    assert len(roots) == len(reference)
    for x in roots:
        if isinstance(x, IsolatedRoot):
            assert poly_eval(x.poly, x.lo) * poly_eval(x.poly, x.hi) <= 0
        else:
            assert poly_eval(coeffs, x) == 0


@settings(max_examples=200)
@given(st.lists(st.one_of(rationals, st.tuples(rationals, rationals, radicands)),
                min_size=3, max_size=3))
def test_compare_is_a_total_order(raw):
    xs = [quad(*x) if isinstance(x, tuple) else x for x in raw]
    a, b, c = xs
    assert compare(a, b) == -compare(b, a)
    assert compare(a, a) == 0
    if compare(a, b) <= 0 and compare(b, c) <= 0:
        assert compare(a, c) <= 0


def test_quadratic_roots():
    assert quadratic_roots(5, 6) == (3, 2)
    assert quadratic_roots(2, -1) == (quad(1, 1, 2), quad(1, -1, 2))
    with pytest.raises(ComplexRoots):
        quadratic_roots(0, 1)


def test_interval_arithmetic_encloses():
    x = Interval(F(1), F(2)) * Interval(F(-1), F(3))
    assert (x.lo, x.hi) == (-2, 6)
    enc = Interval.of(quad(0, 1, 2), 60)
    assert enc.lo ** 2 <= 2 <= enc.hi ** 2
    assert enc.width < F(1, 2**50)
