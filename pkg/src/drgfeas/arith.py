"""Exact numbers for eigenvalue work.

Three kinds of real algebraic numbers appear in this package:

* ``Fraction`` for rationals (the stdlib type is the rational type here),
* :class:`QuadraticNumber` for ``p + q*sqrt(d)`` with ``d`` square-free,
* :class:`IsolatedRoot` for roots of irreducible integer polynomials of
  degree three or more, given by an isolating interval.

Every sign decision is exact.  Polynomials are tuples of integer
coefficients in ascending order of degree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

Rational = Union[int, Fraction]

DEFAULT_WIDTH = Fraction(1, 2**80)
_TRIAL_LIMIT = 10**6


class InvalidInput(ValueError):
    pass


class ComplexRoots(ValueError):
    pass


# ---------------------------------------------------------------------------
# square-free normalisation
# ---------------------------------------------------------------------------

def _is_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def _pollard_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    for c in range(1, 100):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
    raise ArithmeticError(f"pollard rho failed on {n}")


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _factor_large(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if _is_probable_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _pollard_rho(n)
    _factor_large(d, out)
    _factor_large(n // d, out)


def squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(f, s)`` with ``n == f*f*s`` and ``s`` square-free.

    Trial division up to 10**6 handles every radicand met in practice; a
    larger cofactor goes through Pollard rho.
    """
    if n < 0:
        raise InvalidInput("radicand must be non-negative")
    if n == 0:
        return 0, 0
    f, s = 1, 1
    m = n
    p = 2
    while p * p <= m and p <= _TRIAL_LIMIT:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            f *= p ** (e // 2)
            if e % 2:
                s *= p
        p += 1 if p == 2 else 2
    if m > 1:
        if _is_square(m):
            f *= math.isqrt(m)
        elif m < _TRIAL_LIMIT**3:
            # no prime factor <= 10**6 left, so m is prime, p*q or p^2
            s *= m
        else:
            factors: dict[int, int] = {}
            _factor_large(m, factors)
            for q, e in factors.items():
                f *= q ** (e // 2)
                if e % 2:
                    s *= q
    return f, s


# ---------------------------------------------------------------------------
# quadratic irrationals
# ---------------------------------------------------------------------------

def _sign_quadratic(p: Fraction, q: Fraction, d: int) -> int:
    """Sign of p + q*sqrt(d), exactly."""
    sp = (p > 0) - (p < 0)
    sq = (q > 0) - (q < 0)
    if sq == 0 or d == 0:
        return sp
    if sp == 0 or sp == sq:
        return sq
    # opposite signs: compare p^2 with q^2 d
    t = p * p - q * q * d
    if t == 0:
        return 0
    return sp if t > 0 else sq


def _sqrt_bounds(d: int, bits: int) -> tuple[Fraction, Fraction]:
    scale = 1 << bits
    r = math.isqrt(d * scale * scale)
    if r * r == d * scale * scale:
        return Fraction(r, scale), Fraction(r, scale)
    return Fraction(r, scale), Fraction(r + 1, scale)


@dataclass(frozen=True)
class QuadraticNumber:
    """``p + q*sqrt(d)`` with ``d`` square-free, ``d > 1`` and ``q != 0``.

    Use :func:`quad` to build one; it collapses to ``Fraction`` when the
    radical part vanishes.
    """

    p: Fraction
    q: Fraction
    d: int

    # arithmetic ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, QuadraticNumber):
            if other.d != self.d:
                raise InvalidInput(
                    f"mixed radicands sqrt({self.d}) and sqrt({other.d})")
            return other.p, other.q
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0)
        return None

    def __add__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return _mk(self.p + c[0], self.q + c[1], self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.p, -self.q, self.d)

    def __sub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return _mk(self.p - c[0], self.q - c[1], self.d)

    def __rsub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return _mk(c[0] - self.p, c[1] - self.q, self.d)

    def __mul__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        a, b = c
        return _mk(self.p * a + self.q * b * self.d, self.p * b + self.q * a,
                   self.d)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.p * self.p - self.q * self.q * self.d

    def conjugate(self) -> QuadraticNumber:
        return QuadraticNumber(self.p, -self.q, self.d)

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("zero quadratic number")
        return _mk(self.p / n, -self.q / n, self.d)

    def __truediv__(self, other):
        if isinstance(other, QuadraticNumber):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            return _mk(self.p / other, self.q / other, self.d)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result: AlgebraicValue = Fraction(1)
        base: AlgebraicValue = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # order --------------------------------------------------------------
    def sign(self) -> int:
        return _sign_quadratic(self.p, self.q, self.d)

    def __eq__(self, other):
        if isinstance(other, QuadraticNumber):
            return (self.p, self.q, self.d) == (other.p, other.q, other.d)
        return False

    def __hash__(self):
        return hash((self.p, self.q, self.d))

    def __lt__(self, other):
        return compare(self, other) < 0

    def __le__(self, other):
        return compare(self, other) <= 0

    def __gt__(self, other):
        return compare(self, other) > 0

    def __ge__(self, other):
        return compare(self, other) >= 0

    def __float__(self):
        return float(self.p) + float(self.q) * math.sqrt(self.d)

    def minimal_polynomial(self) -> tuple[int, ...]:
        # x^2 - 2p x + (p^2 - q^2 d), cleared of denominators
        b = -2 * self.p
        c = self.norm()
        den = math.lcm(b.denominator, c.denominator)
        return (int(c * den), int(b * den), den)

    def interval(self, bits: int = 80) -> tuple[Fraction, Fraction]:
        lo, hi = _sqrt_bounds(self.d, bits)
        a, b = self.q * lo, self.q * hi
        if a > b:
            a, b = b, a
        return self.p + a, self.p + b

    def __repr__(self):
        return f"QuadraticNumber({self.p}, {self.q}, {self.d})"

    def __str__(self):
        rad = f"sqrt({self.d})"
        if self.q == 1:
            r = rad
        elif self.q == -1:
            r = "-" + rad
        else:
            r = f"{self.q}*{rad}"
        if self.p == 0:
            return r
        if r.startswith("-"):
            return f"{self.p} - {r[1:]}"
        return f"{self.p} + {r}"


def _mk(p: Fraction, q: Fraction, d: int):
    if q == 0:
        return p
    return QuadraticNumber(p, q, d)


def quad(p: Rational, q: Rational, n: int):
    """Build ``p + q*sqrt(n)`` for any integer ``n >= 0``, normalised."""
    p, q = Fraction(p), Fraction(q)
    f, s = squarefree_split(n)
    if s <= 1 or q == 0:
        return p + q * f * s
    return QuadraticNumber(p, q * f, s)


# ---------------------------------------------------------------------------
# integer polynomials
# ---------------------------------------------------------------------------

Poly = tuple  # ascending coefficients


def _trim(c: list) -> list:
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return c


def degree(f: Sequence) -> int:
    f = _trim(list(f))
    if len(f) == 1 and f[0] == 0:
        return -1
    return len(f) - 1


def poly_eval(f: Sequence, x):
    acc = 0
    for a in reversed(f):
        acc = acc * x + a
    return acc


def poly_mul(f: Sequence, g: Sequence) -> list:
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return _trim(out)


def poly_derivative(f: Sequence) -> list:
    return _trim([i * f[i] for i in range(1, len(f))] or [0])


def poly_divmod(f: Sequence, g: Sequence) -> tuple[list, list]:
    """Division over Q; returns Fraction coefficient lists."""
    f = [Fraction(a) for a in _trim(list(f))]
    g = [Fraction(a) for a in _trim(list(g))]
    if degree(g) < 0:
        raise ZeroDivisionError("polynomial division by zero")
    dg = len(g) - 1
    if len(f) - 1 < dg:
        return [Fraction(0)], f
    q = [Fraction(0)] * (len(f) - dg)
    r = f[:]
    lead = g[-1]
    for i in range(len(f) - 1 - dg, -1, -1):
        coef = r[i + dg] / lead
        q[i] = coef
        if coef:
            for j, b in enumerate(g):
                r[i + j] -= coef * b
    return _trim(q), _trim(r[:dg] or [Fraction(0)])


def primitive(f: Sequence) -> tuple[int, ...]:
    """Integer multiple of ``f`` with content 1 and positive leading term."""
    f = _trim([Fraction(a) for a in f])
    if degree(f) < 0:
        return (0,)
    den = 1
    for a in f:
        den = math.lcm(den, a.denominator)
    ints = [int(a * den) for a in f]
    g = 0
    for a in ints:
        g = math.gcd(g, a)
    ints = [a // g for a in ints]
    if ints[-1] < 0:
        ints = [-a for a in ints]
    return tuple(ints)


def poly_gcd(f: Sequence, g: Sequence) -> tuple[int, ...]:
    a, b = primitive(f), primitive(g)
    while degree(b) >= 0:
        _, r = poly_divmod(a, b)
        a, b = b, primitive(r)
    return primitive(a)


def squarefree_part(f: Sequence) -> tuple[int, ...]:
    f = primitive(f)
    if degree(f) <= 0:
        return f
    g = poly_gcd(f, poly_derivative(f))
    if degree(g) == 0:
        return f
    q, r = poly_divmod(f, g)
    assert all(x == 0 for x in r)
    return primitive(q)


def sturm_sequence(f: Sequence) -> list[tuple[int, ...]]:
    seq = [primitive(f)]
    d = poly_derivative(seq[0])
    if degree(d) < 0:
        return seq
    # positive rescaling keeps the sign pattern
    seq.append(primitive(d))
    while True:
        _, r = poly_divmod(seq[-2], seq[-1])
        if degree(r) < 0:
            break
        r = [-x for x in r]
        seq.append(_positive_primitive(r))
    return seq


def _positive_primitive(f: Sequence) -> tuple[int, ...]:
    f = [Fraction(a) for a in f]
    den = 1
    for a in f:
        den = math.lcm(den, a.denominator)
    ints = [int(a * den) for a in f]
    g = 0
    for a in ints:
        g = math.gcd(g, a)
    return tuple(a // g for a in _trim(ints))


def _sign_changes(seq: list, x: Fraction) -> int:
    n = 0
    last = 0
    for s in seq:
        v = poly_eval(s, x)
        if v == 0:
            continue
        sg = 1 if v > 0 else -1
        if last and sg != last:
            n += 1
        last = sg
    return n


def count_roots(seq: list, lo: Fraction, hi: Fraction) -> int:
    """Distinct real roots in ``(lo, hi]``."""
    return _sign_changes(seq, lo) - _sign_changes(seq, hi)


def root_bound(f: Sequence) -> Fraction:
    f = _trim(list(f))
    lead = abs(f[-1])
    return 1 + Fraction(max(abs(a) for a in f[:-1]), lead) if len(f) > 1 \
        else Fraction(1)


# ---------------------------------------------------------------------------
# isolated roots
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IsolatedRoot:
    """The unique root of ``poly`` in the open interval ``(lo, hi)``.

    ``poly`` is irreducible over Q of degree >= 3, so the root is never
    rational or quadratic.  Values are immutable; :meth:`refined` returns a
    narrower copy.
    """

    poly: tuple
    lo: Fraction
    hi: Fraction

    def refined(self, width: Fraction) -> IsolatedRoot:
        lo, hi = self.lo, self.hi
        slo = _sgn(poly_eval(self.poly, lo))
        while hi - lo > width:
            mid = (lo + hi) / 2
            sm = _sgn(poly_eval(self.poly, mid))
            if sm == slo:
                lo = mid
            else:
                hi = mid
        return IsolatedRoot(self.poly, lo, hi)

    def interval(self, bits: int = 80) -> tuple[Fraction, Fraction]:
        r = self.refined(Fraction(1, 2**bits))
        return r.lo, r.hi

    def sign(self) -> int:
        return compare(self, Fraction(0))

    def __float__(self):
        return float((self.lo + self.hi) / 2)

    def __lt__(self, other):
        return compare(self, other) < 0

    def __gt__(self, other):
        return compare(self, other) > 0

    def __le__(self, other):
        return compare(self, other) <= 0

    def __ge__(self, other):
        return compare(self, other) >= 0

    def __str__(self):
        return f"root of {self.poly} in ({float(self.lo):.12g}, {float(self.hi):.12g})"


def _sgn(v) -> int:
    return (v > 0) - (v < 0)


AlgebraicValue = Union[Fraction, QuadraticNumber, IsolatedRoot]


def interval_of(x, bits: int = 80) -> tuple[Fraction, Fraction]:
    if isinstance(x, (int, Fraction)):
        return Fraction(x), Fraction(x)
    return x.interval(bits)


def _same_root(a: IsolatedRoot, b: IsolatedRoot) -> bool:
    lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
    if lo >= hi:
        return False
    g = poly_gcd(a.poly, b.poly)
    if degree(g) < 1:
        return False
    return count_roots(sturm_sequence(g), lo, hi) > 0


def compare(a, b) -> int:
    """Exact three-way comparison of two algebraic values (-1, 0, 1)."""
    if isinstance(a, (int, Fraction)) and isinstance(b, (int, Fraction)):
        return _sgn(a - b)
    if isinstance(a, QuadraticNumber) and isinstance(b, (int, Fraction)):
        return _sign_quadratic(a.p - b, a.q, a.d)
    if isinstance(b, QuadraticNumber) and isinstance(a, (int, Fraction)):
        return -_sign_quadratic(b.p - a, b.q, b.d)
    if isinstance(a, QuadraticNumber) and isinstance(b, QuadraticNumber) \
            and a.d == b.d:
        return _sign_quadratic(a.p - b.p, a.q - b.q, a.d)
    if isinstance(a, IsolatedRoot) and isinstance(b, IsolatedRoot) \
            and _same_root(a, b):
        return 0
    # the remaining pairs are never equal: refine until intervals separate
    bits = 64
    while True:
        alo, ahi = interval_of(a, bits)
        blo, bhi = interval_of(b, bits)
        if ahi < blo:
            return -1
        if bhi < alo:
            return 1
        bits *= 2
        if bits > 1 << 16:
            raise ArithmeticError(f"cannot separate {a} and {b}")


def sign(x) -> int:
    return compare(x, Fraction(0))


def to_float(x) -> float:
    return float(x)


# ---------------------------------------------------------------------------
# root isolation
# ---------------------------------------------------------------------------

def _isolate_intervals(f: tuple) -> list[tuple[Fraction, Fraction]]:
    """Isolating intervals ``(lo, hi]`` for the roots of square-free ``f``.

    A rational root found exactly at a bisection point comes back as a
    degenerate interval ``(r, r)``.
    """
    seq = sturm_sequence(f)
    bound = root_bound(f)
    out = []
    stack = [(-bound, bound)]
    while stack:
        lo, hi = stack.pop()
        n = count_roots(seq, lo, hi)
        if n == 0:
            continue
        if n == 1:
            out.append(_tighten(f, seq, lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((lo, mid))
        stack.append((mid, hi))
    return out


def _tighten(f, seq, lo, hi):
    # one root in (lo, hi]; return an interval with nonzero endpoint values
    if poly_eval(f, hi) == 0:
        return hi, hi
    while poly_eval(f, lo) == 0:
        mid = (lo + hi) / 2
        if poly_eval(f, mid) == 0:
            return mid, mid
        if count_roots(seq, lo, mid) == 1:
            hi = mid
        else:
            lo = mid
    return lo, hi


def _rational_in(f: tuple, lo: Fraction, hi: Fraction):
    """The rational root of ``f`` in ``(lo, hi)``, or None.

    Rational roots of an integer polynomial with leading coefficient L lie
    on the grid Z/L, so an interval narrower than 1/L holds at most one
    candidate.
    """
    lead = abs(f[-1])
    slo = _sgn(poly_eval(f, lo))
    step = Fraction(1, lead)
    while hi - lo >= step:
        mid = (lo + hi) / 2
        v = poly_eval(f, mid)
        if v == 0:
            return mid
        if _sgn(v) == slo:
            lo = mid
        else:
            hi = mid
    n = math.floor(lo * lead) + 1
    cand = Fraction(n, lead)
    if lo < cand < hi and poly_eval(f, cand) == 0:
        return cand
    return None


def _irreducible_factors(f: tuple) -> list[tuple]:
    """Factor a square-free polynomial free of rational roots.

    Degree <= 3 is already irreducible under that hypothesis; larger
    degrees are handed to sympy.
    """
    if degree(f) <= 3:
        return [f]
    import sympy

    x = sympy.Symbol("x")
    expr = sum(int(c) * x**i for i, c in enumerate(f))
    _, facs = sympy.factor_list(expr, x)
    out = []
    for g, _mult in facs:
        coeffs = sympy.Poly(g, x).all_coeffs()[::-1]
        out.append(primitive([int(c) for c in coeffs]))
    return out


def isolate_real_roots(poly: Sequence[int], width: Fraction = DEFAULT_WIDTH):
    """All distinct real roots of an integer polynomial, descending.

    Rational roots come back as ``Fraction``, roots of quadratic factors as
    :class:`QuadraticNumber`, the rest as :class:`IsolatedRoot` with interval
    width at most ``width``.
    """
    if degree(poly) < 0:
        raise InvalidInput("zero polynomial has no isolated roots")
    f = squarefree_part(poly)
    if degree(f) <= 0:
        return []
    roots: list = []
    rest = list(f)
    for lo, hi in _isolate_intervals(f):
        r = lo if lo == hi else _rational_in(f, lo, hi)
        if r is not None:
            roots.append(r)
            q, rem = poly_divmod(rest, [-r.numerator, r.denominator])
            assert all(x == 0 for x in rem)
            rest = list(primitive(q))
    if degree(rest) >= 1:
        for g in _irreducible_factors(tuple(rest)):
            if degree(g) == 1:
                roots.append(Fraction(-g[0], g[1]))
            elif degree(g) == 2:
                c, b, a = g
                disc = b * b - 4 * a * c
                if disc >= 0:
                    roots.append(quad(Fraction(-b, 2 * a), Fraction(1, 2 * a), disc))
                    roots.append(quad(Fraction(-b, 2 * a), Fraction(-1, 2 * a), disc))
            else:
                for lo, hi in _isolate_intervals(g):
                    roots.append(IsolatedRoot(g, lo, hi).refined(width))
    return sort_descending(roots)


def sort_descending(values: list) -> list:
    import functools

    return sorted(values, key=functools.cmp_to_key(lambda a, b: compare(b, a)))


def quadratic_roots(s: Rational, p: Rational):
    """Roots of ``x^2 - s*x + p``, larger first."""
    s, p = Fraction(s), Fraction(p)
    disc = s * s - 4 * p
    if disc < 0:
        raise ComplexRoots(f"x^2 - ({s})x + ({p}) has no real roots")
    # sqrt(disc)/2 with disc = N/D  ->  sqrt(N*D)/(2D)
    n, d = disc.numerator, disc.denominator
    half = s / 2
    return (quad(half, Fraction(1, 2 * d), n * d),
            quad(half, Fraction(-1, 2 * d), n * d))


# ---------------------------------------------------------------------------
# interval arithmetic (used only for eigenvalues of degree >= 3)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    @classmethod
    def of(cls, x, bits: int = 80) -> Interval:
        return cls(*interval_of(x, bits))

    def __add__(self, o):
        o = _as_interval(o)
        return Interval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, o):
        return self + (-_as_interval(o))

    def __rsub__(self, o):
        return _as_interval(o) - self

    def __mul__(self, o):
        o = _as_interval(o)
        ps = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(min(ps), max(ps))

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = _as_interval(o)
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError("interval contains zero")
        return self * Interval(1 / o.hi, 1 / o.lo)

    def __rtruediv__(self, o):
        return _as_interval(o) / self

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi


def _as_interval(x) -> Interval:
    if isinstance(x, Interval):
        return x
    return Interval(Fraction(x), Fraction(x))
