"""Eigenvalues, standard sequences, multiplicities and Krein parameters.

Everything is exact when the eigenvalues are rational or lie in one
quadratic field.  Eigenvalues of algebraic degree >= 3 go through
:class:`~drgfeas.arith.Interval` arithmetic instead, and results derived
from them are flagged as interval-certified.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import (
    Interval,
    IsolatedRoot,
    QuadraticNumber,
    compare,
    degree,
    isolate_real_roots,
    poly_divmod,
    poly_eval,
    poly_mul,
    quad,
    sign,
    squarefree_part,
)
from .arrays import IntersectionArray, derive

CERT_WIDTH = Fraction(1, 10**9)
_MAX_BITS = 1280


class SpectrumError(ValueError):
    """The array cannot carry a distance-regular spectrum."""


def char_poly(arr: IntersectionArray) -> list[int]:
    """det(xI - L) for the tridiagonal intersection matrix L."""
    prev, cur = [1], [-arr.ai(0), 1]
    for i in range(1, arr.D + 1):
        nxt = poly_mul([-arr.ai(i), 1], cur)
        t = arr.bi(i - 1) * arr.ci(i)
        for j, c in enumerate(prev):
            nxt[j] -= t * c
        prev, cur = cur, nxt
    return cur


def reduced_char_poly(arr: IntersectionArray) -> tuple[int, ...]:
    """Characteristic polynomial divided by (x - k); its roots are θ1..θD."""
    q, r = poly_divmod(char_poly(arr), [-arr.k, 1])
    if any(x != 0 for x in r):
        raise AssertionError(f"(x - k) does not divide the characteristic "
                             f"polynomial of {arr}")
    return tuple(int(x) for x in q)


@functools.lru_cache(maxsize=4096)
def eigenvalues(arr: IntersectionArray) -> tuple:
    f = reduced_char_poly(arr)
    if degree(squarefree_part(f)) != degree(f):
        raise SpectrumError(f"{arr}: repeated eigenvalue")
    if poly_eval(f, arr.k) == 0:
        raise SpectrumError(f"{arr}: k is a repeated eigenvalue")
    roots = isolate_real_roots(f)
    if len(roots) != arr.D:
        raise SpectrumError(f"{arr}: only {len(roots)} real eigenvalues besides k")
    if compare(roots[0], arr.k) > 0:
        raise SpectrumError(f"{arr}: eigenvalue larger than k")
    return (Fraction(arr.k),) + tuple(roots)


def _numeric(theta, bits: int):
    """θ itself if exact arithmetic applies, else an enclosing Interval."""
    if isinstance(theta, IsolatedRoot):
        return Interval.of(theta, bits)
    if isinstance(theta, int):
        return Fraction(theta)
    return theta


@dataclass(frozen=True)
class StandardSequence:
    theta: object
    u: tuple


def standard_sequence(arr: IntersectionArray, theta, bits: int = 80) -> StandardSequence:
    """u_0 = 1, u_1 = θ/k, then c_i u_{i-1} + a_i u_i + b_i u_{i+1} = θ u_i."""
    t = _numeric(theta, bits)
    u = [Fraction(1), t / arr.k]
    for i in range(1, arr.D):
        u.append(((t - arr.ai(i)) * u[i] - arr.ci(i) * u[i - 1]) / arr.bi(i))
    return StandardSequence(theta, tuple(u[: arr.D + 1]))


def _norm_sum(ki, u):
    s = Fraction(0)
    for k_i, u_i in zip(ki, u):
        s = s + k_i * u_i * u_i
    return s


def multiplicity(arr: IntersectionArray, theta):
    """n / Σ k_i u_i(θ)^2.

    Exact (``Fraction`` or ``QuadraticNumber``) for rational and quadratic
    θ; an :class:`Interval` narrower than 1e-9 for θ of higher degree.
    """
    dp = derive(arr)
    if not isinstance(theta, IsolatedRoot):
        seq = standard_sequence(arr, theta)
        s = _norm_sum(dp.ki, seq.u)
        if sign(s) == 0:
            raise AssertionError(f"{arr}: vanishing norm for θ={theta}")
        return dp.n / s
    bits = 80
    while True:
        seq = standard_sequence(arr, theta, bits)
        try:
            m = dp.n / _norm_sum(dp.ki, seq.u)
        except ZeroDivisionError:
            m = None
        if m is not None and m.width < CERT_WIDTH:
            return m
        bits *= 2
        if bits > _MAX_BITS:
            raise ArithmeticError(f"multiplicity of {theta} did not converge")


@dataclass(frozen=True)
class IntegralityVerdict:
    integral: bool
    certified: str  # "exact" or "interval"
    value: object


def positive_integer(m) -> IntegralityVerdict:
    """Is a multiplicity value a positive integer?"""
    if isinstance(m, Interval):
        n = round((m.lo + m.hi) / 2)
        ok = n >= 1 and m.lo > n - CERT_WIDTH and m.hi < n + CERT_WIDTH
        return IntegralityVerdict(ok, "interval", n if ok else m)
    if isinstance(m, QuadraticNumber):
        return IntegralityVerdict(False, "exact", m)
    m = Fraction(m)
    return IntegralityVerdict(m.denominator == 1 and m > 0, "exact", m)


@dataclass(frozen=True)
class SpectrumData:
    array: IntersectionArray
    eigenvalues: tuple
    multiplicities: tuple
    sequences: tuple
    n: Fraction

    @property
    def exact(self) -> bool:
        return not any(isinstance(t, IsolatedRoot) for t in self.eigenvalues)


@functools.lru_cache(maxsize=4096)
def spectrum(arr: IntersectionArray) -> SpectrumData:
    evs = eigenvalues(arr)
    ms = tuple(multiplicity(arr, t) for t in evs)
    seqs = tuple(standard_sequence(arr, t) for t in evs)
    return SpectrumData(arr, evs, ms, seqs, derive(arr).n)


# ---------------------------------------------------------------------------
# Krein parameters
# ---------------------------------------------------------------------------

def _common_field(evs) -> bool:
    ds = {t.d for t in evs if isinstance(t, QuadraticNumber)}
    return len(ds) <= 1 and not any(isinstance(t, IsolatedRoot) for t in evs)


@dataclass(frozen=True)
class KreinTensor:
    """q[k][i][j]; exact values, or Intervals when ``exact`` is False."""

    q: tuple
    exact: bool
    signs: tuple = field(repr=False)

    def __call__(self, k: int, i: int, j: int):
        return self.q[k][i][j]

    def sign(self, k: int, i: int, j: int) -> int:
        return self.signs[k][i][j]

    def most_negative(self):
        """(value, (k, i, j)) of the smallest negative entry, or None."""
        worst = None
        D1 = len(self.q)
        for k in range(D1):
            for i in range(D1):
                for j in range(D1):
                    if self.signs[k][i][j] < 0:
                        v = self.q[k][i][j]
                        key = v.hi if isinstance(v, Interval) else v
                        if worst is None or compare(key, worst[2]) < 0:
                            worst = (v, (k, i, j), key)
        return None if worst is None else worst[:2]


def _krein_entries(arr, evs, ms, n, ki, bits):
    seqs = [standard_sequence(arr, t, bits).u for t in evs]
    ms = [_numeric(m, bits) if not isinstance(m, Interval) else m for m in ms]
    D1 = len(evs)
    q = [[[None] * D1 for _ in range(D1)] for _ in range(D1)]
    for k in range(D1):
        for i in range(D1):
            for j in range(i, D1):
                s = Fraction(0)
                for l in range(D1):
                    s = s + ki[l] * seqs[i][l] * seqs[j][l] * seqs[k][l]
                v = ms[i] * ms[j] * s / n
                q[k][i][j] = q[k][j][i] = v
    return q


def krein_tensor(arr: IntersectionArray) -> KreinTensor:
    sp = spectrum(arr)
    dp = derive(arr)
    D1 = arr.D + 1
    if _common_field(sp.eigenvalues):
        q = _krein_entries(arr, sp.eigenvalues, sp.multiplicities, sp.n, dp.ki, 80)
        signs = tuple(tuple(tuple(sign(q[k][i][j]) for j in range(D1))
                            for i in range(D1)) for k in range(D1))
        return KreinTensor(_freeze(q), True, signs)
    bits = 80
    while True:
        ms = [m if isinstance(m, Interval) else Interval.of(m, bits)
              for m in sp.multiplicities]
        q = _krein_entries(arr, sp.eigenvalues, ms, sp.n, dp.ki, bits)
        undecided = [(k, i, j) for k in range(D1) for i in range(D1)
                     for j in range(D1) if q[k][i][j].contains(0)]
        if not undecided or bits >= _MAX_BITS:
            break
        bits *= 2
    # entries still straddling zero at full precision are reported as zero
    signs = tuple(tuple(tuple(_interval_sign(q[k][i][j]) for j in range(D1))
                        for i in range(D1)) for k in range(D1))
    return KreinTensor(_freeze(q), False, signs)


def _interval_sign(v: Interval) -> int:
    if v.lo > 0:
        return 1
    if v.hi < 0:
        return -1
    return 0


def _freeze(q):
    return tuple(tuple(tuple(row) for row in plane) for plane in q)


def q_poly_wrt_theta1(arr: IntersectionArray) -> bool:
    """Diameter 3: q^2_{11} = 0 or q^3_{11} = 0."""
    if arr.D != 3:
        raise ValueError(f"Q-polynomial test needs diameter 3, got {arr.D}")
    kt = krein_tensor(arr)
    return kt.sign(2, 1, 1) == 0 or kt.sign(3, 1, 1) == 0


def theta1_lower_bound(arr: IntersectionArray):
    """min{(a1 + sqrt(a1^2 + 4k))/2, a3} for diameter 3 arrays."""
    a3 = arr.ai(3)
    r = local_bound_root(arr.ai(1), arr.k)
    return r if compare(r, a3) < 0 else Fraction(a3)


def trace_sums(sp: SpectrumData, t: int):
    """Σ m_i θ_i^t (exact spectra only)."""
    s = Fraction(0)
    for th, m in zip(sp.eigenvalues, sp.multiplicities):
        s = s + m * th**t
    return s


def local_bound_root(a1: int, k: int):
    """(a1 + sqrt(a1^2 + 4k)) / 2, the spectral radius of {x} ∪ Γ(x)."""
    return quad(Fraction(a1, 2), Fraction(1, 2), a1 * a1 + 4 * k)


__all__ = [
    "KreinTensor",
    "SpectrumData",
    "SpectrumError",
    "StandardSequence",
    "char_poly",
    "eigenvalues",
    "krein_tensor",
    "multiplicity",
    "positive_integer",
    "q_poly_wrt_theta1",
    "reduced_char_poly",
    "spectrum",
    "standard_sequence",
    "theta1_lower_bound",
    "trace_sums",
]
