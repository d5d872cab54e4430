"""Exhaustive search over Shilla parameters (b, a3, c2, b2).

The pruned search walks a3, then c2 over divisors of k*b1 (so k2 is
integral), then b2 in the residue class forced by the divisibility
conditions on c2.  Closed-form spectral tests run next and the general
feasibility machinery only sees what is left.  :func:`enumerate_unpruned`
applies the general checks to every tuple and serves as the reference.
"""

from __future__ import annotations

import enum
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .arith import compare
from .arrays import IntersectionArray, format_array, passes_basic
from .feasibility import (
    CliqueVerdict,
    FeasibilityReport,
    Rules,
    clique_coclique_condition,
    coclique_threshold,
    feasibility_check,
    load_rules,
    p_integrality,
)
from .shilla import (
    ShillaConstraintReport,
    ShillaParams,
    c2_lower_bound,
    eq2_lhs,
    krein_bound,
    search_bound_a3,
    shilla_array,
    shilla_constraints,
    shilla_params,
    shilla_spectrum,
)
from .spectrum import krein_tensor, positive_integer, q_poly_wrt_theta1, spectrum


class Filter(enum.Flag):
    BASIC = enum.auto()
    DIVISIBILITY = enum.auto()
    MULTIPLICITY = enum.auto()
    PARITY = enum.auto()
    KREIN = enum.auto()
    CLIQUE = enum.auto()
    KNOWN = enum.auto()
    M2_EQ_M3 = enum.auto()
    QPOLY = enum.auto()


DEFAULT_FILTERS = (Filter.BASIC | Filter.DIVISIBILITY | Filter.MULTIPLICITY
                   | Filter.PARITY | Filter.KREIN | Filter.CLIQUE | Filter.KNOWN)

FILTER_NAMES = {
    "basic": Filter.BASIC,
    "divisibility": Filter.DIVISIBILITY,
    "multiplicity": Filter.MULTIPLICITY,
    "parity": Filter.PARITY,
    "krein": Filter.KREIN,
    "clique-coclique": Filter.CLIQUE,
    "known-results": Filter.KNOWN,
    "require-m2-eq-m3": Filter.M2_EQ_M3,
    "require-qpoly": Filter.QPOLY,
}


def filter_name(f: Filter) -> str:
    for k, v in FILTER_NAMES.items():
        if v == f:
            return k
    return str(f)


class EnumerationDefect(AssertionError):
    """Two independent routes to the same fact disagreed."""


@dataclass
class EnumerationQuery:
    b_min: int
    b_max: int
    a3_max: int | None = None
    filters: Filter = DEFAULT_FILTERS
    jobs: int = 1
    candidate_cap: int | None = None
    rules: Rules | None = None

    def __post_init__(self):
        if not 2 <= self.b_min <= self.b_max <= 10**4:
            raise ValueError(f"b-range {self.b_min}..{self.b_max} outside [2, 10^4]")
        if self.a3_max is not None and self.a3_max < self.b_min:
            raise ValueError("a3-max must be at least b")

    def a3_limit(self, b: int) -> int:
        if self.a3_max is not None:
            return self.a3_max
        return search_bound_a3(b, assume_qpoly_handled=True)


@dataclass(frozen=True)
class Survivor:
    params: ShillaParams
    array: IntersectionArray
    shilla: ShillaConstraintReport
    feasibility: FeasibilityReport


@dataclass
class EnumerationResult:
    query: EnumerationQuery
    survivors: list
    visited: int = 0
    pruned: dict = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def arrays(self) -> list[str]:
        return [format_array(s.array) for s in self.survivors]


class CandidateCapExceeded(RuntimeError):
    def __init__(self, partial: EnumerationResult, where: tuple):
        self.partial = partial
        self.where = where
        super().__init__(f"candidate cap {partial.query.candidate_cap} exceeded "
                         f"at (b, a3) = {where} after {partial.visited} candidates")


# ---------------------------------------------------------------------------
# divisors
# ---------------------------------------------------------------------------

def _factor(n: int, into: dict) -> None:
    d = 2
    while d * d <= n:
        while n % d == 0:
            into[d] = into.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        into[n] = into.get(n, 0) + 1


def divisors_of_product(factors: Iterable[int], limit: int) -> list[int]:
    """Sorted divisors <= limit of the product of ``factors``."""
    pe: dict[int, int] = {}
    for f in factors:
        _factor(f, pe)
    divs = [1]
    for p, e in pe.items():
        new = []
        for d in divs:
            x = d
            for _ in range(e + 1):
                if x > limit:
                    break
                new.append(x)
                x *= p
        divs = new
    return sorted(divs)


# ---------------------------------------------------------------------------
# pruned search
# ---------------------------------------------------------------------------

def _count(pruned: dict, f: Filter) -> None:
    name = filter_name(f)
    pruned[name] = pruned.get(name, 0) + 1


def _b2_step(b: int, a3: int, c2: int) -> int:
    step = 1
    for x in ((b - 1) * a3, b * (a3 + 1), b + a3, (b - 1) * b):
        step = math.lcm(step, c2 // math.gcd(c2, x))
    return step


def eq2_in_b2(b: int, a3: int, c2: int) -> tuple[int, int, int, int]:
    """Coefficients (const, x, x^2, x^3) of the m2 = m3 polynomial as a cubic in b2."""
    # s = b2 + c2 expands to a monic cubic in b2
    A = (b - 1) * a3
    # s(s - a3)(s + A) = s^3 + (A - a3) s^2 - A a3 s
    B, C = A - a3, -A * a3
    c0 = (c2**3 + B * c2 * c2 + C * c2 + (2 * b - 3) * c2 * c2 + b * (b - 1) * c2
          + (b - 1) ** 2 * a3 * c2)
    c1 = 3 * c2 * c2 + 2 * B * c2 + C - b * (b - 1) * a3 + (b - 3) * c2
    c2_ = 3 * c2 + B - b
    return c0, c1, c2_, 1


def _cubic_integer_roots(f: tuple, lo: int, hi: int) -> list[int]:
    """Integer roots in [lo, hi] of a monic integer cubic, exactly."""
    c0, c1, c2, _ = f

    def ev(x):
        return ((x + c2) * x + c1) * x + c0

    # monotone between consecutive points once the critical points are bracketed
    points = {lo, hi}
    disc = c2 * c2 - 3 * c1
    if disc >= 0:
        r = math.isqrt(disc)
        for num in (-c2 - r - 1, -c2 - r, -c2 + r, -c2 + r + 1):
            t = num // 3
            for x in (t - 1, t, t + 1, t + 2):
                if lo < x < hi:
                    points.add(x)
    pts = sorted(points)
    roots = set()
    for x in pts:
        if ev(x) == 0:
            roots.add(x)
    for u, v in zip(pts, pts[1:]):
        fu, fv = ev(u), ev(v)
        if fu == 0 or fv == 0 or (fu > 0) == (fv > 0):
            continue
        while v - u > 1:
            m = (u + v) // 2
            fm = ev(m)
            if fm == 0:
                roots.add(m)
                break
            if (fm > 0) == (fu > 0):
                u, fu = m, fm
            else:
                v = m
    return sorted(roots)


def _scan_a3(b: int, a3: int, filters: Filter, rules: Rules, stats: dict) -> list:
    """Survivors for one (b, a3); ``stats`` collects visited/pruned counts."""
    k, b1, c3, a1 = b * a3, (b - 1) * (a3 + 1), (b - 1) * a3, a3 - b
    pruned = stats.setdefault("pruned", {})
    use_div = Filter.DIVISIBILITY in filters
    c2_hi = min(b1, c3)
    c2_lo = 1
    if Filter.CLIQUE in filters:
        c2_lo = max(c2_lo, math.ceil(c2_lower_bound(b, a3)))
        alpha = -(-k // (a1 + 1))
        if alpha >= 2:
            c2_lo = max(c2_lo, math.ceil(coclique_threshold(alpha, a1, k) + 1))
    if use_div:
        c2s = [d for d in divisors_of_product((b, b - 1, a3, a3 + 1), c2_hi) if d >= c2_lo]
    else:
        c2s = range(c2_lo, c2_hi + 1)
    out = []
    for c2 in c2s:
        if use_div:
            lo = max(1, -(-((1 + a3) * c2) // (b + a3)))
            step = _b2_step(b, a3, c2)
            start = -(-lo // step) * step
            b2s = range(start, min(b1, k - c2) + 1, step)
        else:
            b2s = range(1, b1 + 1)
        if Filter.M2_EQ_M3 in filters and b2s:
            # m2 = m3 forces b2 onto the integer roots of the m2 = m3 cubic;
            # _fast_filters re-checks equality of the multiplicities exactly
            roots = _cubic_integer_roots(eq2_in_b2(b, a3, c2), b2s[0], b2s[-1])
            skipped = len(b2s)
            b2s = [r for r in roots if (r - b2s[0]) % b2s.step == 0]
            stats["visited"] = stats.get("visited", 0) + skipped - len(b2s)
            pruned[filter_name(Filter.M2_EQ_M3)] = (
                pruned.get(filter_name(Filter.M2_EQ_M3), 0) + skipped - len(b2s))
        for b2 in b2s:
            stats["visited"] = stats.get("visited", 0) + 1
            p = ShillaParams(b, a3, c2, b2)
            failed = _fast_filters(p, filters, rules)
            if failed is None:
                out.append(p)
            else:
                _count(pruned, failed)
    return out


def _fast_filters(p: ShillaParams, filters: Filter, rules: Rules) -> Filter | None:
    """First failing filter via Shilla closed forms, or None."""
    b, a3, c2, b2 = p.b, p.a3, p.c2, p.b2
    k, b1, c3 = p.k, p.b1, p.c3
    k2 = Fraction(k * b1, c2)
    k3 = k2 * b2 / c3
    n = 1 + k + k2 + k3
    if Filter.MULTIPLICITY in filters:
        m1 = n * b * b2 / (b * b2 + a3 * b2 + (a3 + 1) * c2)
        if m1.denominator != 1 or m1 <= 0:
            return Filter.MULTIPLICITY
    if Filter.PARITY in filters:
        for ki, ai in ((k, p.a1), (k2, p.a2), (k3, a3)):
            v = ki * ai
            if v.denominator != 1 or v.numerator % 2:
                return Filter.PARITY
    need_spec = filters & (Filter.MULTIPLICITY | Filter.M2_EQ_M3 | Filter.QPOLY)
    if need_spec:
        try:
            sp = shilla_spectrum(p)
        except ValueError:
            return Filter.MULTIPLICITY
        if Filter.MULTIPLICITY in filters:
            for m in (sp.m2, sp.m3):
                if not positive_integer(m).integral:
                    return Filter.MULTIPLICITY
        if Filter.M2_EQ_M3 in filters:
            equal = _mult_equal(sp.m2, sp.m3)
            if equal != (eq2_lhs(b, a3, c2, b2) == 0):
                raise EnumerationDefect(
                    f"{p}: m2 = m3 is {equal} but the m2 = m3 polynomial is {eq2_lhs(b, a3, c2, b2)}")
            if not equal:
                return Filter.M2_EQ_M3
        if Filter.QPOLY in filters and compare(sp.theta3, krein_bound(p)) != 0:
            return Filter.QPOLY
    arr = IntersectionArray((k, b1, b2), (1, c2, c3))
    if Filter.DIVISIBILITY in filters and not p_integrality(arr).passed:
        return Filter.DIVISIBILITY
    if Filter.KREIN in filters:
        try:
            kt = krein_tensor(arr)
        except ValueError:
            return Filter.KREIN
        if kt.most_negative() is not None:
            return Filter.KREIN
    if Filter.KNOWN in filters:
        clique = clique_coclique_condition(arr)
        if rules.match(arr, clique):
            return Filter.KNOWN
    return None


def _mult_equal(x, y) -> bool:
    from .arith import QuadraticNumber

    if isinstance(x, QuadraticNumber) and isinstance(y, QuadraticNumber) and x.d != y.d:
        return False
    return compare(x, y) == 0


def _scan_block(args) -> tuple[list, dict]:
    b, a3s, filters, rules = args
    stats: dict = {}
    out = []
    for a3 in a3s:
        out.extend(_scan_a3(b, a3, filters, rules, stats))
    return out, stats


def _merge_stats(total: EnumerationResult, stats: dict) -> None:
    total.visited += stats.get("visited", 0)
    for k, v in stats.get("pruned", {}).items():
        total.pruned[k] = total.pruned.get(k, 0) + v


def _blocks(query: EnumerationQuery, size: int = 64):
    for b in range(query.b_min, query.b_max + 1):
        top = query.a3_limit(b)
        for start in range(b, top + 1, size):
            yield b, range(start, min(start + size, top + 1))


def enumerate_shilla(query: EnumerationQuery,
                     progress: Callable[[int, int], None] | None = None) -> EnumerationResult:
    """All Shilla parameters in range passing the configured filters.

    ``progress(visited, survivors)`` is called after each a3 block.
    """
    t0 = time.perf_counter()
    rules = query.rules if query.rules is not None else load_rules()
    if Filter.KNOWN not in query.filters:
        rules = Rules()
    result = EnumerationResult(query, [])
    found: list[ShillaParams] = []
    tasks = [(b, a3s, query.filters, rules) for b, a3s in _blocks(query)]

    def consume(outputs):
        for (b, a3s, _, _), (params, stats) in zip(tasks, outputs):
            found.extend(params)
            _merge_stats(result, stats)
            if progress:
                progress(result.visited, len(found))
            if query.candidate_cap is not None and result.visited > query.candidate_cap:
                result.survivors = _finish(sorted(found), rules)
                result.wall_time = time.perf_counter() - t0
                raise CandidateCapExceeded(result, (b, a3s[-1]))

    if query.jobs > 1:
        import multiprocessing

        with multiprocessing.Pool(query.jobs) as pool:
            consume(pool.imap(_scan_block, tasks))
    else:
        consume(map(_scan_block, tasks))
    result.survivors = _finish(sorted(found), rules)
    result.wall_time = time.perf_counter() - t0
    return result


def _finish(params: list[ShillaParams], rules: Rules) -> list[Survivor]:
    out = []
    for p in params:
        arr = shilla_array(p)
        out.append(Survivor(p, arr, shilla_constraints(p), feasibility_check(arr, rules)))
    return out


# ---------------------------------------------------------------------------
# reference search without pruning
# ---------------------------------------------------------------------------

def general_first_failure(arr: IntersectionArray, filters: Filter,
                          rules: Rules) -> Filter | None:
    """First failing filter using only general (non-Shilla) machinery."""
    if not passes_basic(arr):
        return Filter.BASIC
    rep = feasibility_check(arr, rules if Filter.KNOWN in filters else None)
    if Filter.MULTIPLICITY in filters and not rep.multiplicity.passed:
        return Filter.MULTIPLICITY
    if Filter.PARITY in filters and not rep.parity.passed:
        return Filter.PARITY
    if Filter.DIVISIBILITY in filters and not rep.p_integrality.passed:
        return Filter.DIVISIBILITY
    if Filter.CLIQUE in filters:
        cl = rep.clique
        if cl is None or cl.verdict is CliqueVerdict.FAIL:
            return Filter.CLIQUE
        k, a1 = arr.k, arr.ai(1)
        s = arr.ai(3) - a1 + 1
        if arr.ci(2) - 1 < coclique_threshold(s, a1, k):
            return Filter.CLIQUE
    if Filter.KREIN in filters and not rep.krein.passed:
        return Filter.KREIN
    if Filter.M2_EQ_M3 in filters:
        try:
            ms = spectrum(arr).multiplicities
        except ValueError:
            return Filter.M2_EQ_M3
        if not _mult_equal(ms[2], ms[3]):
            return Filter.M2_EQ_M3
    if Filter.QPOLY in filters and not q_poly_wrt_theta1(arr):
        return Filter.QPOLY
    if Filter.KNOWN in filters and rep.known_result:
        return Filter.KNOWN
    return None


def enumerate_unpruned(query: EnumerationQuery) -> list[ShillaParams]:
    rules = query.rules if query.rules is not None else load_rules()
    out = []
    for b in range(query.b_min, query.b_max + 1):
        for a3 in range(b, query.a3_limit(b) + 1):
            b1, c3 = (b - 1) * (a3 + 1), (b - 1) * a3
            for c2 in range(1, c3 + 1):
                for b2 in range(1, b1 + 1):
                    arr = IntersectionArray((b * a3, b1, b2), (1, c2, c3))
                    if general_first_failure(arr, query.filters, rules) is None:
                        out.append(ShillaParams(b, a3, c2, b2))
    return sorted(out)


# ---------------------------------------------------------------------------
# golden-list comparison
# ---------------------------------------------------------------------------

@dataclass
class ListDiff:
    unexpected: list  # (canonical array, reason)
    missing: list  # (canonical array, reason)

    @property
    def empty(self) -> bool:
        return not self.unexpected and not self.missing

    def lines(self) -> list[str]:
        out = [f"+ {a}  ({r})" for a, r in self.unexpected]
        out += [f"- {a}  ({r})" for a, r in self.missing]
        return out


def verify_list(result: EnumerationResult | EnumerationQuery,
                expected: Iterable[IntersectionArray]) -> ListDiff:
    """Compare an enumeration with an expected list, both directions."""
    if isinstance(result, EnumerationQuery):
        result = enumerate_shilla(result)
    q = result.query
    rules = q.rules if q.rules is not None else load_rules()
    got = {format_array(s.array): s for s in result.survivors}
    want = {format_array(a): a for a in expected}
    unexpected = [(a, "survived all filters: " + s.feasibility.overall)
                  for a, s in got.items() if a not in want]
    missing = []
    for text, arr in want.items():
        if text in got:
            continue
        missing.append((text, _why_absent(arr, q, rules)))
    return ListDiff(sorted(unexpected), sorted(missing))


def _why_absent(arr: IntersectionArray, q: EnumerationQuery, rules: Rules) -> str:
    if arr.D != 3:
        return "not diameter 3"
    p = shilla_params(arr)
    if p is None:
        return "not a Shilla array"
    if not q.b_min <= p.b <= q.b_max or p.a3 > q.a3_limit(p.b):
        return f"outside query range {p}"
    f = general_first_failure(arr, q.filters, rules)
    if f is None:
        return "passes every filter: enumeration missed it (defect)"
    return f"removed by {filter_name(f)}"
