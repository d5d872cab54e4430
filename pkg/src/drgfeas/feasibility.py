"""Feasibility of intersection arrays.

The classical conditions (integral intersection numbers, integral
multiplicities, the handshake parity k_i a_i, non-negative Krein
parameters) plus the clique/co-clique bound on c2 and a file-driven list of
external nonexistence results.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .arrays import (
    IntersectionArray,
    Verdict,
    basic_conditions,
    derive,
    format_array,
    parse_array,
    ArrayParseError,
)
from .spectrum import SpectrumError, krein_tensor, positive_integer, spectrum

RULES_ENV = "DRGFEAS_RULES"


def intersection_numbers(arr: IntersectionArray) -> tuple:
    """p[i][j][l] for 0 <= i, j, l <= D, as Fractions.

    Seeded by the j = 0 and j = 1 layers and extended with
    c_{j+1} p^i_{j+1,l} = b_{l-1} p^i_{j,l-1} + (a_l - a_j) p^i_{jl}
                          + c_{l+1} p^i_{j,l+1} - b_{j-1} p^i_{j-1,l}.
    """
    D = arr.D
    a = [arr.ai(i) for i in range(D + 1)]

    def at(layer, l):
        return layer[l] if 0 <= l <= D else 0

    p = []
    for i in range(D + 1):
        layers = [[Fraction(int(l == i)) for l in range(D + 1)]]
        one = [Fraction(0)] * (D + 1)
        if i >= 1:
            one[i - 1] = Fraction(arr.ci(i))
        one[i] = Fraction(a[i])
        if i + 1 <= D:
            one[i + 1] = Fraction(arr.bi(i))
        layers.append(one)
        for j in range(1, D):
            cur, prev = layers[j], layers[j - 1]
            nxt = []
            for l in range(D + 1):
                v = (arr.bi(l - 1) * at(cur, l - 1) + (a[l] - a[j]) * cur[l]
                     + arr.ci(l + 1) * at(cur, l + 1) - arr.bi(j - 1) * prev[l])
                nxt.append(v / arr.ci(j + 1))
            layers.append(nxt)
        p.append(tuple(tuple(x) for x in layers[: D + 1]))
    return tuple(p)


def p_integrality(arr: IntersectionArray, p=None) -> Verdict:
    p = intersection_numbers(arr) if p is None else p
    D = arr.D
    for i in range(D + 1):
        for j in range(D + 1):
            for l in range(D + 1):
                v = p[i][j][l]
                if v.denominator != 1 or v < 0:
                    return Verdict("p-integrality", False, f"p^{i}_{j}{l} = {v}")
    return Verdict("p-integrality", True)


def parity(arr: IntersectionArray) -> Verdict:
    dp = derive(arr)
    for i, (k_i, a_i) in enumerate(zip(dp.ki, dp.a)):
        v = k_i * a_i
        if v.denominator != 1 or v.numerator % 2:
            return Verdict("parity", False, f"k{i}*a{i} = {k_i}*{a_i} = {v}")
    return Verdict("parity", True)


# ---------------------------------------------------------------------------
# clique / co-clique bound
# ---------------------------------------------------------------------------

class CliqueVerdict(str, Enum):
    PASS = "PASS"
    TERWILLIGER_REQUIRED = "TERWILLIGER_REQUIRED"
    FAIL = "FAIL"


@dataclass(frozen=True)
class CliqueCocliqueResult:
    verdict: CliqueVerdict
    alpha: int
    lhs: int  # c2 - 1
    threshold: Fraction

    def __str__(self):
        rel = {"PASS": ">", "TERWILLIGER_REQUIRED": "=", "FAIL": "<"}[self.verdict.value]
        return (f"{self.verdict.value}: alpha={self.alpha}, "
                f"c2-1={self.lhs} {rel} {self.threshold}")


def coclique_threshold(s: int, a1: int, k: int) -> Fraction:
    """(s(a1+1) - k) / C(s, 2), the lower bound on c2 - 1 from an s-co-clique."""
    return Fraction(s * (a1 + 1) - k, math.comb(s, 2))


def clique_coclique_condition(arr: IntersectionArray) -> CliqueCocliqueResult:
    if arr.D < 2:
        raise ValueError("clique/co-clique condition needs diameter >= 2")
    k, a1, c2 = arr.k, arr.ai(1), arr.ci(2)
    if a1 < 0:
        raise ValueError(f"a1 = {a1} is negative")
    alpha = -(-k // (a1 + 1))
    if alpha < 2:
        return CliqueCocliqueResult(CliqueVerdict.PASS, alpha, c2 - 1, Fraction(0))
    t = coclique_threshold(alpha, a1, k)
    lhs = c2 - 1
    if lhs > t:
        v = CliqueVerdict.PASS
    elif lhs == t:
        v = CliqueVerdict.TERWILLIGER_REQUIRED
    else:
        v = CliqueVerdict.FAIL
    return CliqueCocliqueResult(v, alpha, lhs, t)


# ---------------------------------------------------------------------------
# external results
# ---------------------------------------------------------------------------

class RulesError(ValueError):
    pass


@dataclass(frozen=True)
class Rules:
    arrays: dict = field(default_factory=dict)  # canonical text -> rule name
    terwilliger: tuple = ()  # (min c2, rule name)

    def match(self, arr: IntersectionArray, clique: CliqueCocliqueResult | None):
        name = self.arrays.get(format_array(arr))
        if name:
            return name
        if clique is not None and clique.verdict is CliqueVerdict.TERWILLIGER_REQUIRED:
            for min_c2, rule in self.terwilliger:
                if arr.ci(2) >= min_c2:
                    return rule
        return None


def parse_rules(text: str, source: str = "<rules>") -> Rules:
    arrays: dict[str, str] = {}
    terw: list[tuple[int, str]] = []
    for ln, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("{"):
            end = line.find("}")
            if end < 0:
                raise RulesError(f"{source}:{ln}: unterminated array")
            try:
                arr = parse_array(line[: end + 1])
            except ArrayParseError as e:
                raise RulesError(f"{source}:{ln}: {e}") from e
            name = line[end + 1:].strip()
            if not name or len(name.split()) != 1:
                raise RulesError(f"{source}:{ln}: expected exactly one rule name")
            arrays[format_array(arr)] = name
        elif line.startswith("TERWILLIGER"):
            parts = line.split()
            if len(parts) != 3 or not parts[1].startswith("c2>="):
                raise RulesError(f"{source}:{ln}: expected 'TERWILLIGER c2>=N name'")
            try:
                min_c2 = int(parts[1][4:])
            except ValueError:
                raise RulesError(f"{source}:{ln}: bad c2 bound {parts[1]!r}") from None
            terw.append((min_c2, parts[2]))
        else:
            raise RulesError(f"{source}:{ln}: unrecognised rule {line!r}")
    return Rules(arrays, tuple(terw))


def default_rules_text() -> str:
    return resources.files("drgfeas").joinpath("data/known_results.txt").read_text()


def load_rules(path: str | Path | None = None) -> Rules:
    """Rules from ``path``, else $DRGFEAS_RULES, else the shipped file."""
    path = path or os.environ.get(RULES_ENV)
    if path:
        p = Path(path)
        try:
            text = p.read_text(encoding="utf-8")
        except OSError as e:
            raise RulesError(f"cannot read rules file {p}: {e}") from e
        return parse_rules(text, str(p))
    return parse_rules(default_rules_text(), "known_results.txt")


NO_RULES = Rules()


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------

FEASIBLE = "feasible"
INFEASIBLE = "infeasible"
MODULO_TERWILLIGER = "feasible-modulo-terwilliger"


@dataclass(frozen=True)
class FeasibilityReport:
    array: IntersectionArray
    basic: tuple
    p_integrality: Verdict
    multiplicity: Verdict
    multiplicities: tuple
    parity: Verdict
    krein: Verdict
    clique: CliqueCocliqueResult | None
    known_result: str | None
    eigenvalues: tuple = ()
    interval_certified: bool = False

    @property
    def reasons(self) -> list[str]:
        out = [f"{v.name}: {v.witness}" for v in self.basic if not v.passed]
        for v in (self.p_integrality, self.multiplicity, self.parity, self.krein):
            if not v.passed:
                out.append(f"{v.name}: {v.witness}")
        if self.clique is not None and self.clique.verdict is CliqueVerdict.FAIL:
            out.append(f"clique-coclique: {self.clique}")
        if self.known_result:
            out.append(f"known-result: {self.known_result}")
        return out

    @property
    def overall(self) -> str:
        if self.reasons:
            return INFEASIBLE
        # with c2 = 1 every graph is trivially Terwilliger: nothing to check
        if self.clique is not None and self.array.ci(2) >= 2 and \
                self.clique.verdict is CliqueVerdict.TERWILLIGER_REQUIRED:
            return MODULO_TERWILLIGER
        return FEASIBLE

    @property
    def feasible(self) -> bool:
        return self.overall != INFEASIBLE


def _spectral_verdicts(arr: IntersectionArray):
    try:
        sp = spectrum(arr)
    except (SpectrumError, ZeroDivisionError, AssertionError) as e:
        bad = Verdict("multiplicity-integrality", False, str(e))
        return bad, (), Verdict("krein", False, "no spectrum"), (), False
    mults = sp.multiplicities
    witness = ""
    certified = not sp.exact
    for i, m in enumerate(mults):
        iv = positive_integer(m)
        if not iv.integral:
            witness = f"m{i} = {_show(m)}"
            break
    mv = Verdict("multiplicity-integrality", not witness, witness)
    kt = krein_tensor(arr)
    worst = kt.most_negative()
    if worst is None:
        kv = Verdict("krein", True)
    else:
        val, (k, i, j) = worst
        kv = Verdict("krein", False, f"q^{k}_{i}{j} = {_show(val)}")
    return mv, mults, kv, sp.eigenvalues, certified


def _show(x) -> str:
    from .arith import Interval

    if isinstance(x, Interval):
        return f"[{float(x.lo):.12g}, {float(x.hi):.12g}]"
    return str(x)


def feasibility_check(arr: IntersectionArray, rules: Rules | None = None) -> FeasibilityReport:
    """Evaluate every condition and, if ``rules`` is given, apply them."""
    basic = tuple(basic_conditions(arr))
    p = intersection_numbers(arr)
    pv = p_integrality(arr, p)
    par = parity(arr)
    mv, mults, kv, evs, certified = _spectral_verdicts(arr)
    clique = None
    if arr.D >= 2 and arr.ai(1) >= 0:
        clique = clique_coclique_condition(arr)
    report = FeasibilityReport(arr, basic, pv, mv, mults, par, kv, clique, None,
                               evs, certified)
    if rules is not None:
        report = apply_known_results(arr, report, rules)
    return report


def apply_known_results(arr: IntersectionArray, report: FeasibilityReport,
                        rules: Rules | None = None) -> FeasibilityReport:
    rules = load_rules() if rules is None else rules
    hit = rules.match(arr, report.clique)
    if hit is None:
        return report
    return replace(report, known_result=hit)
