"""Intersection arrays: parsing, formatting, derived parameters."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterator


class ArrayParseError(ValueError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


@dataclass(frozen=True)
class IntersectionArray:
    b: tuple[int, ...]
    c: tuple[int, ...]

    def __post_init__(self):
        if len(self.b) != len(self.c) or not self.b:
            raise ValueError("b and c lists must be nonempty and of equal length")

    @property
    def D(self) -> int:
        return len(self.b)

    @property
    def k(self) -> int:
        return self.b[0]

    def bi(self, i: int) -> int:
        """b_i with the conventions b_D = 0 and out-of-range = 0."""
        return self.b[i] if 0 <= i < self.D else 0

    def ci(self, i: int) -> int:
        """c_i with c_0 = 0."""
        return self.c[i - 1] if 1 <= i <= self.D else 0

    def ai(self, i: int) -> int:
        if not 0 <= i <= self.D:
            return 0
        return self.k - self.bi(i) - self.ci(i)

    def __str__(self):
        return format_array(self)


_TOKEN = re.compile(r"\s*(\{|\}|;|,|[+-]?\d+|\S)")


def parse_array(text: str) -> IntersectionArray:
    """Parse ``{b0,...,b_{D-1};c1,...,cD}`` (whitespace anywhere)."""
    pos = 0
    tokens: list[tuple[str, int]] = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        tokens.append((m.group(1), m.start(1)))
        pos = m.end()
    if not tokens or tokens[0][0] != "{":
        raise ArrayParseError("expected '{'", tokens[0][1] if tokens else 0)
    lists: list[list[int]] = [[]]
    expect_number = True
    i = 1
    while True:
        if i >= len(tokens):
            raise ArrayParseError("unterminated array, expected '}'", len(text))
        tok, at = tokens[i]
        if expect_number:
            if not re.fullmatch(r"[+-]?\d+", tok):
                raise ArrayParseError(f"expected integer, got {tok!r}", at)
            v = int(tok)
            if v <= 0:
                raise ArrayParseError(f"entries must be positive, got {v}", at)
            lists[-1].append(v)
            expect_number = False
        elif tok == ",":
            expect_number = True
        elif tok == ";":
            if len(lists) == 2:
                raise ArrayParseError("more than one ';'", at)
            lists.append([])
            expect_number = True
        elif tok == "}":
            break
        else:
            raise ArrayParseError(f"unexpected {tok!r}", at)
        i += 1
    if i + 1 < len(tokens):
        raise ArrayParseError("trailing characters", tokens[i + 1][1])
    if len(lists) != 2:
        raise ArrayParseError("missing ';' between b and c lists", tokens[i][1])
    b, c = lists
    if len(b) != len(c):
        raise ArrayParseError(
            f"unequal lengths: {len(b)} b-entries, {len(c)} c-entries", tokens[i][1])
    return IntersectionArray(tuple(b), tuple(c))


def format_array(arr: IntersectionArray) -> str:
    return "{" + ",".join(map(str, arr.b)) + ";" + ",".join(map(str, arr.c)) + "}"


def read_batch(path: str | Path) -> Iterator[tuple[int, IntersectionArray]]:
    """Yield ``(line_number, array)`` from a batch file.

    Blank lines and ``#`` comments are skipped.  A bad line raises
    :class:`ArrayParseError` whose message carries the line number.
    """
    with open(path, encoding="utf-8") as fh:
        for ln, line in enumerate(fh, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                yield ln, parse_array(line)
            except ArrayParseError as e:
                raise ArrayParseError(f"line {ln}: {e}") from e


@dataclass(frozen=True)
class DerivedParams:
    k: int
    a: tuple[int, ...]
    ki: tuple[Fraction, ...]
    n: Fraction


def derive(arr: IntersectionArray) -> DerivedParams:
    D = arr.D
    a = tuple(arr.ai(i) for i in range(D + 1))
    ki = [Fraction(1)]
    for i in range(1, D + 1):
        ki.append(ki[-1] * arr.bi(i - 1) / arr.ci(i))
    return DerivedParams(arr.k, a, tuple(ki), sum(ki, Fraction(0)))


@dataclass(frozen=True)
class Verdict:
    name: str
    passed: bool
    witness: str = ""


def basic_conditions(arr: IntersectionArray) -> list[Verdict]:
    """Monotonicity of b and c, c1 = 1, and b_i >= c_j for i + j <= D."""
    D = arr.D
    out = []

    w = ""
    for i in range(1, D):
        if arr.b[i] > arr.b[i - 1] or (i == 1 and arr.b[1] == arr.b[0]):
            w = f"b{i - 1}={arr.b[i - 1]} vs b{i}={arr.b[i]}"
            break
    out.append(Verdict("monotone-b", not w, w))

    w = ""
    if arr.c[0] != 1:
        w = f"c1={arr.c[0]} != 1"
    else:
        for j in range(2, D + 1):
            if arr.ci(j) < arr.ci(j - 1):
                w = f"c{j - 1}={arr.ci(j - 1)} vs c{j}={arr.ci(j)}"
                break
    out.append(Verdict("monotone-c", not w, w))

    w = ""
    for i in range(D):
        for j in range(1, D - i + 1):
            if arr.bi(i) < arr.ci(j):
                w = f"b{i}={arr.bi(i)} < c{j}={arr.ci(j)}"
                break
        if w:
            break
    out.append(Verdict("cross", not w, w))
    return out


def passes_basic(arr: IntersectionArray) -> bool:
    return all(v.passed for v in basic_conditions(arr))
