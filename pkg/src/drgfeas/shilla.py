"""Shilla arrays: diameter 3 with second largest eigenvalue equal to a3.

A Shilla array is pinned down by four integers (b, a3, c2, b2):

    {b*a3, (b-1)(a3+1), b2; 1, c2, (b-1)*a3}

with b = a3 - a1 >= 2.  θ1 = a3 is rational and θ2, θ3 are the roots of a
quadratic, so everything here is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import QuadraticNumber, compare, quadratic_roots, sign
from .arrays import IntersectionArray, Verdict, basic_conditions
from .spectrum import standard_sequence


class InvalidParams(ValueError):
    pass


@dataclass(frozen=True, order=True)
class ShillaParams:
    b: int
    a3: int
    c2: int
    b2: int

    @property
    def k(self) -> int:
        return self.b * self.a3

    @property
    def a1(self) -> int:
        return self.a3 - self.b

    @property
    def b1(self) -> int:
        return (self.b - 1) * (self.a3 + 1)

    @property
    def c3(self) -> int:
        return (self.b - 1) * self.a3

    @property
    def a2(self) -> int:
        return self.k - self.b2 - self.c2

    @property
    def n(self) -> Fraction:
        k, b1 = self.k, self.b1
        return (1 + k + Fraction(k * b1, self.c2)
                + Fraction(k * b1 * self.b2, self.c2 * self.c3))

    def __str__(self):
        return f"(b={self.b}, a3={self.a3}, c2={self.c2}, b2={self.b2})"


def shilla_params(arr: IntersectionArray) -> ShillaParams | None:
    """Recover (b, a3, c2, b2), or None when the array is not Shilla."""
    if arr.D != 3:
        raise ValueError(f"Shilla arrays have diameter 3, got {arr.D}")
    k, a1, a3 = arr.k, arr.ai(1), arr.ai(3)
    b = a3 - a1
    if b < 2 or a1 < 0 or k != b * a3:
        return None
    if arr.b[1] != (b - 1) * (a3 + 1) or arr.c[2] != (b - 1) * a3:
        return None
    return ShillaParams(b, a3, arr.c[1], arr.b[2])


def shilla_array(p: ShillaParams) -> IntersectionArray:
    if p.b < 2 or p.a3 < p.b or p.c2 < 1 or p.b2 < 1:
        raise InvalidParams(f"{p}: need b >= 2, a3 >= b, c2 >= 1, b2 >= 1")
    arr = IntersectionArray((p.k, p.b1, p.b2), (1, p.c2, p.c3))
    bad = [f"{v.name}: {v.witness}" for v in basic_conditions(arr) if not v.passed]
    if bad:
        raise InvalidParams(f"{p} gives {arr}, which violates " + "; ".join(bad))
    return arr


def eq2_lhs(b: int, a3: int, c2: int, b2: int) -> int:
    """Integer polynomial whose vanishing characterises m2 = m3."""
    s = b2 + c2
    return (s * (s - a3) * (s + (b - 1) * a3) - b * b2 * b2 + (2 * b - 3) * c2 * c2
            + b * (b - 1) * c2 + (b - 1) ** 2 * a3 * c2 - b * (b - 1) * a3 * b2
            + (b - 3) * b2 * c2)


def m1_closed_form(p: ShillaParams) -> Fraction:
    """m1 = n / (1 + a3/b + (a3+1) c2 / (b b2)), using u2(a3) = 0."""
    return p.n / (1 + Fraction(p.a3, p.b) + Fraction((p.a3 + 1) * p.c2, p.b * p.b2))


def theta_quadratic(p: ShillaParams) -> tuple[int, int]:
    """(s, q) with θ2, θ3 the roots of x^2 - s x + q."""
    return p.a1 + p.a2 - p.k, (p.b - 1) * p.b2 - p.a2


@dataclass(frozen=True)
class ShillaSpectrum:
    theta2: object
    theta3: object
    m1: Fraction
    m2: object
    m3: object


def _biggs(arr: IntersectionArray, n: Fraction, ki, theta):
    u = standard_sequence(arr, theta).u
    s = Fraction(0)
    for k_i, u_i in zip(ki, u):
        s = s + k_i * u_i * u_i
    return n / s


def shilla_spectrum(p: ShillaParams) -> ShillaSpectrum:
    s, q = theta_quadratic(p)
    try:
        t2, t3 = quadratic_roots(s, q)
    except ValueError as e:
        raise InvalidParams(f"{p}: {e}") from e
    arr = IntersectionArray((p.k, p.b1, p.b2), (1, p.c2, p.c3))
    k2 = Fraction(p.k * p.b1, p.c2)
    ki = (Fraction(1), Fraction(p.k), k2, k2 * p.b2 / p.c3)
    n = sum(ki, Fraction(0))
    m1 = n / (1 + Fraction(p.a3, p.b) + Fraction((p.a3 + 1) * p.c2, p.b * p.b2))
    return ShillaSpectrum(t2, t3, m1, _biggs(arr, n, ki, t2), _biggs(arr, n, ki, t3))


def krein_bound(p: ShillaParams) -> Fraction:
    """-b(b b2 + c2)/(b2 + c2); q^3_{11} >= 0 iff θ3 is at least this."""
    return Fraction(-p.b * (p.b * p.b2 + p.c2), p.b2 + p.c2)


def krein_q11_sign_closed(p: ShillaParams, theta) -> int:
    """Sign of q^i_{11} at θ = θi (i = 2, 3): sign of b^2 b2 + b c2 + (b2+c2)θ."""
    return sign(p.b * p.b * p.b2 + p.b * p.c2 + (p.b2 + p.c2) * theta)


def is_qpoly_closed(p: ShillaParams, theta3) -> bool:
    return compare(theta3, krein_bound(p)) == 0


# ---------------------------------------------------------------------------
# constraint report
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ShillaConstraintReport:
    params: ShillaParams
    spectrum: ShillaSpectrum
    verdicts: tuple  # Verdict, in the order evaluated
    eq2: int
    m2_eq_m3: bool
    qpoly: bool
    p333_zero: bool
    theta3_low_regime: bool

    def verdict(self, name: str) -> Verdict:
        for v in self.verdicts:
            if v.name == name:
                return v
        raise KeyError(name)

    @property
    def failures(self) -> list[Verdict]:
        return [v for v in self.verdicts if not v.passed]


def _divides(d: int, x: int) -> bool:
    return x % d == 0


def divisibility_verdicts(p: ShillaParams) -> list[Verdict]:
    b, a3, c2, b2 = p.b, p.a3, p.c2, p.b2
    out = []
    for name, x, expr in (
        ("div-i", (b - 1) * a3 * b2, "(b-1)a3 b2"),
        ("div-ii", (b - 1) * b * a3 * (a3 + 1), "(b-1)b a3(a3+1)"),
        ("div-iii", b * (a3 + 1) * b2, "b(a3+1)b2"),
        ("div-iv", (b + a3) * b2, "(b+a3)b2"),
        ("div-v", (b - 1) * b * b2, "(b-1)b b2"),
    ):
        out.append(Verdict(name, _divides(c2, x), f"c2={c2} | {expr}={x}"))
    lhs, rhs = (b + a3) * b2, (1 + a3) * c2
    out.append(Verdict("div-iv-ineq", lhs >= rhs, f"(b+a3)b2={lhs} >= (1+a3)c2={rhs}"))
    return out


def c2_lower_bound(b: int, a3: int) -> Fraction:
    return Fraction(2 * a3 - b * b + b + 2, b * (b + 1))


def shilla_constraints(p: ShillaParams) -> ShillaConstraintReport:
    b, a3, c2, b2 = p.b, p.a3, p.c2, p.b2
    sp = shilla_spectrum(p)
    t2, t3 = sp.theta2, sp.theta3
    vs: list[Verdict] = []

    lb = c2_lower_bound(b, a3)
    vs.append(Verdict("lemma-c2-bound", c2 >= lb, f"c2={c2} >= {lb}"))

    vs.extend(divisibility_verdicts(p))
    p333_zero = (b + a3) * b2 == (1 + a3) * c2

    lo, hi = -b * b, -b
    ok = compare(t3, lo) > 0 and compare(t3, hi) < 0
    vs.append(Verdict("theta3-window", ok, f"{lo} < θ3={t3} < {hi}"))

    kb = krein_bound(p)
    vs.append(Verdict("krein-q311", compare(t3, kb) >= 0, f"θ3={t3} >= {kb}"))
    s2 = krein_q11_sign_closed(p, t2)
    vs.append(Verdict("krein-q211", s2 > 0, f"sign(q^2_11) = {s2}"))

    qpoly = compare(t3, kb) == 0
    if qpoly:
        integral = all(isinstance(t, Fraction) and t.denominator == 1 for t in (t2, t3))
        vs.append(Verdict("qpoly-integral", integral, f"θ2={t2}, θ3={t3}"))
        x = b * (b - 1) * b2
        vs.append(Verdict("qpoly-div", _divides(b2 + c2, x), f"b2+c2={b2 + c2} | {x}"))
        wlo, whi = -b * b + 1, Fraction(-b * b * (b + 3), 3 * b + 1)
        ok = compare(t3, wlo) >= 0 and compare(t3, whi) <= 0
        vs.append(Verdict("qpoly-window", ok, f"{wlo} <= θ3={t3} <= {whi}"))

    e2 = eq2_lhs(b, a3, c2, b2)
    m2_eq_m3 = compare(sp.m2, sp.m3) == 0 if _comparable(sp.m2, sp.m3) else False
    if m2_eq_m3:
        s = b2 + c2
        vs.append(Verdict("m2m3-eq2", e2 == 0, f"m2 = m3 polynomial = {e2}"))
        vs.append(Verdict("m2m3-window", a3 - b < s < a3 + b,
                          f"{a3 - b} < b2+c2={s} < {a3 + b}"))
        vs.append(Verdict("m2m3-c2", c2 < b2 + b, f"c2={c2} < b2+b={b2 + b}"))
        if s == a3 or b2 == c2:
            want = Fraction(b * (b - 1), 2)
            vs.append(Verdict("m2m3-special", a3 == want, f"a3={a3} == b(b-1)/2={want}"))

    m1 = sp.m1
    vs.append(Verdict("sqrt-k-bound", m1 > 0 and m1 * m1 > p.k, f"sqrt({p.k}) < m1={m1}"))

    low = compare(t3, -b * b + 2) < 0
    return ShillaConstraintReport(p, sp, tuple(vs), e2, m2_eq_m3, qpoly, p333_zero, low)


def _comparable(x, y) -> bool:
    if isinstance(x, QuadraticNumber) and isinstance(y, QuadraticNumber):
        return x.d == y.d
    return True


# ---------------------------------------------------------------------------
# search bounds, Q-polynomial candidates, the m2 = m3 family
# ---------------------------------------------------------------------------

def search_bound_a3(b: int, assume_qpoly_handled: bool = True) -> int:
    """Largest a3 that still has to be searched for given b.

    Without Q-polynomial structure k < b^5 (b+1)^2; unconditionally
    k < 4 b^10.  Both bound k = b*a3 strictly.
    """
    if b < 2:
        raise ValueError("b must be at least 2")
    if assume_qpoly_handled:
        return b**4 * (b + 1) ** 2 - 1
    return 4 * b**9 - 1


def qpoly_window(b: int) -> range:
    """Integers θ3 with -b^2 + 1 <= θ3 <= -b^2 (b+3)/(3b+1)."""
    hi = math.floor(Fraction(-b * b * (b + 3), 3 * b + 1))
    return range(-b * b + 1, hi + 1)


def qpoly_raw_candidates(b: int) -> list[ShillaParams]:
    """Q-polynomial Shilla parameters before any feasibility test.

    For each admissible θ3 the ratio b2/c2 is fixed, so (c2, b2) = t*(Q, P)
    and a3 is linear in t; t runs until a3 leaves [b, 4 b^9 - 1].
    """
    out = []
    bound = search_bound_a3(b, assume_qpoly_handled=False)
    for th in qpoly_window(b):
        r = Fraction(-(th + b), th + b * b)
        if r <= 0:
            continue
        P, Q = r.numerator, r.denominator

        def a3_of(t):
            b2, c2 = P * t, Q * t
            return Fraction(th * th + (b + b2 + c2) * th + b * b2 + c2, th + b)

        slope = a3_of(1) - a3_of(0)
        t = 1
        while True:
            a3 = a3_of(t)
            if slope > 0 and a3 > bound:
                break
            if slope <= 0 and a3 < b:
                break
            if a3.denominator == 1 and a3 >= b:
                p = ShillaParams(b, int(a3), Q * t, P * t)
                if _valid(p) and m1_closed_form(p).denominator == 1:
                    t3 = shilla_spectrum(p).theta3
                    if compare(t3, th) == 0:
                        out.append(p)
            t += 1
    return sorted(out, key=lambda p: (p.a3, p.c2))


def _valid(p: ShillaParams) -> bool:
    try:
        shilla_array(p)
    except InvalidParams:
        return False
    return True


def qpoly_candidates(b: int, rules=None) -> list[ShillaParams]:
    """Feasible Q-polynomial (w.r.t. θ1) Shilla parameters for this b.

    ``rules`` is a :class:`~drgfeas.feasibility.Rules`; None means the
    shipped rules file, ``feasibility.NO_RULES`` disables exclusions.
    """
    from .feasibility import feasibility_check, load_rules

    if rules is None:
        rules = load_rules()
    out = []
    for p in qpoly_raw_candidates(b):
        rep = feasibility_check(shilla_array(p), rules)
        if rep.feasible:
            out.append(p)
    return out


def family_array(b: int) -> IntersectionArray | None:
    """The m2 = m3 family with b2 = c2 = b(b-1)/4 and a3 = b(b-1)/2."""
    if b < 4 or b % 4 not in (0, 1):
        return None
    c2 = b * (b - 1) // 4
    return IntersectionArray(
        (b * b * (b - 1) // 2, (b - 1) * (b * b - b + 2) // 2, c2),
        (1, c2, b * (b - 1) ** 2 // 2),
    )
