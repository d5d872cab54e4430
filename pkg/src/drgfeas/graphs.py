"""Small witness graphs and empirical checks of the graph-level bounds.

This is the only module that does floating-point linear algebra.  The
numerical checks are oracles for statements about concrete graphs, never
feasibility verdicts, so a tolerance of 1e-9 is used for eigensolver
agreement and 1e-6 for the asserted inequalities.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Hashable, Sequence

import numpy as np

from .arith import sign
from .arrays import IntersectionArray, format_array
from .spectrum import spectrum, theta1_lower_bound

EIG_TOL = 1e-9
ASSERT_TOL = 1e-6


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]
    neighbors: tuple[tuple[int, ...], ...]
    labels: tuple = field(default=(), repr=False)

    @classmethod
    def from_rule(cls, labels: Sequence[Hashable],
                  adjacent: Callable[[object, object], bool]) -> "Graph":
        labels = tuple(labels)
        n = len(labels)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n)
                 if adjacent(labels[u], labels[v])]
        return cls.from_edges(n, edges, labels)

    @classmethod
    def from_edges(cls, n: int, edges, labels=()) -> "Graph":
        seen = set()
        nbrs: list[list[int]] = [[] for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            e = (min(u, v), max(u, v))
            if e in seen:
                raise GraphError(f"repeated edge {e}")
            seen.add(e)
            nbrs[u].append(v)
            nbrs[v].append(u)
        return cls(n, tuple(sorted(seen)), tuple(tuple(sorted(x)) for x in nbrs),
                   tuple(labels))

    def degree(self, v: int) -> int:
        return len(self.neighbors[v])

    def regular_degree(self) -> int | None:
        ds = {len(x) for x in self.neighbors}
        return ds.pop() if len(ds) == 1 else None

    def adjacency(self) -> np.ndarray:
        A = np.zeros((self.n, self.n))
        for u, v in self.edges:
            A[u, v] = A[v, u] = 1.0
        return A

    def distances_from(self, x: int) -> list[int]:
        dist = [-1] * self.n
        dist[x] = 0
        queue = deque([x])
        while queue:
            u = queue.popleft()
            for w in self.neighbors[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    def induced(self, vertices: Sequence[int]) -> "Graph":
        index = {v: i for i, v in enumerate(vertices)}
        edges = [(index[u], index[v]) for u, v in self.edges
                 if u in index and v in index]
        return Graph.from_edges(len(vertices), edges,
                                tuple(self.labels[v] for v in vertices) if self.labels else ())

    def edge_list(self) -> str:
        return "".join(f"{u} {v}\n" for u, v in self.edges)


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------

def build_hamming(d: int = 3, q: int = 3) -> Graph:
    words = list(itertools.product(range(q), repeat=d))
    return Graph.from_rule(words, lambda x, y: sum(a != b for a, b in zip(x, y)) == 1)


def build_johnson(v: int = 9, k: int = 3) -> Graph:
    if not v > k >= 1:
        raise GraphError(f"J(v,k) needs v > k >= 1, got ({v},{k})")
    sets = [frozenset(s) for s in itertools.combinations(range(v), k)]
    return Graph.from_rule(sets, lambda x, y: len(x & y) == k - 1)


def build_odd(m: int = 4) -> Graph:
    """Odd graph O_m: (m-1)-subsets of a (2m-1)-set, adjacent when disjoint."""
    if m < 2:
        raise GraphError(f"odd graph needs m >= 2, got {m}")
    sets = [frozenset(s) for s in itertools.combinations(range(2 * m - 1), m - 1)]
    return Graph.from_rule(sets, lambda x, y: not (x & y))


@dataclass(frozen=True)
class Witness:
    name: str
    title: str
    build: Callable[[], Graph]
    array: str


WITNESSES = {
    "hamming": Witness("hamming", "H(3,3)", lambda: build_hamming(3, 3), "{6,4,2;1,2,3}"),
    "johnson": Witness("johnson", "J(9,3)", lambda: build_johnson(9, 3), "{18,10,4;1,4,9}"),
    "odd4": Witness("odd4", "Odd-4", lambda: build_odd(4), "{4,3,3;1,1,2}"),
}


# ---------------------------------------------------------------------------
# distance-regularity
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DistancePartitionCheck:
    array: IntersectionArray | None
    witness: str = ""

    @property
    def ok(self) -> bool:
        return self.array is not None


def distance_matrix(g: Graph) -> list[list[int]]:
    rows = [g.distances_from(x) for x in range(g.n)]
    if g.n and any(d < 0 for d in rows[0]):
        raise GraphError("graph is disconnected")
    return rows


def verify_distance_regular(g: Graph) -> DistancePartitionCheck:
    """BFS from every vertex and check that c_i, a_i, b_i depend only on i."""
    if g.n == 0:
        raise GraphError("empty graph")
    dist = distance_matrix(g)
    D = max(max(row) for row in dist)
    seen: dict[int, tuple[int, int, int, tuple[int, int]]] = {}
    for x in range(g.n):
        dx = dist[x]
        for y in range(g.n):
            i = dx[y]
            counts = [0, 0, 0]
            for z in g.neighbors[y]:
                counts[dx[z] - i + 1] += 1
            c, a, b = counts
            if i not in seen:
                seen[i] = (c, a, b, (x, y))
                continue
            c0, a0, b0, (x0, y0) = seen[i]
            if (c, a, b) != (c0, a0, b0):
                return DistancePartitionCheck(None, (
                    f"pairs ({x0},{y0}) and ({x},{y}) at distance {i}: "
                    f"(c,a,b) = {(c0, a0, b0)} vs {(c, a, b)}"))
    bs = tuple(seen[i][2] for i in range(D))
    cs = tuple(seen[i][0] for i in range(1, D + 1))
    return DistancePartitionCheck(IntersectionArray(bs, cs))


# ---------------------------------------------------------------------------
# co-cliques in local graphs
# ---------------------------------------------------------------------------

def max_coclique(g: Graph) -> list[int]:
    """A maximum independent set, by branch and bound.

    Branches on a vertex of maximum degree in the remaining graph (take it,
    or drop it); the bound is the size of a greedy clique cover of the rest,
    which caps the independent set it can still contain.
    """
    nbr = [set(x) for x in g.neighbors]
    best: list[int] = []

    def cover_bound(cand: set[int]) -> int:
        # greedy partition of cand into cliques
        left = sorted(cand, key=lambda v: -len(nbr[v] & cand))
        cliques: list[list[int]] = []
        for v in left:
            for cl in cliques:
                if all(w in nbr[v] for w in cl):
                    cl.append(v)
                    break
            else:
                cliques.append([v])
        return len(cliques)

    def go(chosen: list[int], cand: set[int]):
        nonlocal best
        if not cand:
            if len(chosen) > len(best):
                best = list(chosen)
            return
        if len(chosen) + cover_bound(cand) <= len(best):
            return
        v = max(cand, key=lambda u: (len(nbr[u] & cand), -u))
        if not nbr[v] & cand:
            # every remaining vertex is isolated in cand
            go(chosen + sorted(cand), set())
            return
        go(chosen + [v], cand - nbr[v] - {v})
        go(chosen, cand - {v})

    go([], set(range(g.n)))
    return sorted(best)


def local_graph(g: Graph, x: int) -> Graph:
    return g.induced(g.neighbors[x])


@dataclass(frozen=True)
class CocliqueReport:
    max_sizes: tuple[int, ...]  # per vertex
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def coclique_bound_check(g: Graph, arr: IntersectionArray) -> CocliqueReport:
    """For every vertex, the co-clique bound on c2 and α(Δ(x)) ≥ k/(a1+1)."""
    if arr.D < 2:
        raise GraphError("co-clique bound needs diameter >= 2")
    k, a1, c2 = arr.k, arr.ai(1), arr.ci(2)
    sizes = []
    bad = []
    cache: dict[tuple, int] = {}
    for x in range(g.n):
        loc = local_graph(g, x)
        key = loc.edges
        if key not in cache:
            cache[key] = len(max_coclique(loc))
        s_max = cache[key]
        sizes.append(s_max)
        if s_max * (a1 + 1) < k:
            bad.append(f"vertex {x}: max co-clique {s_max} < k/(a1+1) = {k}/{a1 + 1}")
        for s in range(2, s_max + 1):
            if (c2 - 1) * math.comb(s, 2) < s * (a1 + 1) - k:
                bad.append(f"vertex {x}: s={s}, c2-1={c2 - 1} < "
                           f"({s * (a1 + 1) - k})/{math.comb(s, 2)}")
    return CocliqueReport(tuple(sizes), tuple(bad))


# ---------------------------------------------------------------------------
# spectra
# ---------------------------------------------------------------------------

def graph_eigenvalues(g: Graph) -> np.ndarray:
    """Adjacency eigenvalues, descending."""
    return np.linalg.eigvalsh(g.adjacency())[::-1]


def _second_largest(ev: np.ndarray) -> float:
    return float(ev[1]) if len(ev) > 1 else float("-inf")


@dataclass(frozen=True)
class InterlacingReport:
    theta1: float
    local_bound: float
    submatrix_theta: tuple[float, ...]  # second largest eigenvalue per sampled x
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def interlacing_check(g: Graph, arr: IntersectionArray,
                      samples: Sequence[int] | None = None) -> InterlacingReport:
    """Second eigenvalue of {x} ∪ Γ(x) ∪ Γ3(x) against θ1, and the θ1 lower bound."""
    if arr.D != 3:
        raise GraphError(f"interlacing check needs diameter 3, got {arr.D}")
    theta1 = _second_largest(graph_eigenvalues(g))
    bound = float(theta1_lower_bound(arr))
    samples = range(g.n) if samples is None else samples
    bad = []
    if theta1 < bound - ASSERT_TOL:
        bad.append(f"θ1 = {theta1:.9g} < min bound {bound:.9g}")
    seconds = []
    for x in samples:
        dx = g.distances_from(x)
        verts = [v for v in range(g.n) if dx[v] in (0, 1, 3)]
        sub = _second_largest(graph_eigenvalues(g.induced(verts)))
        seconds.append(sub)
        if sub > theta1 + ASSERT_TOL:
            bad.append(f"vertex {x}: submatrix eigenvalue {sub:.9g} > θ1 = {theta1:.9g}")
    return InterlacingReport(theta1, bound, tuple(seconds), tuple(bad))


@dataclass(frozen=True)
class SpectrumCheck:
    observed: tuple[tuple[float, int], ...]  # (eigenvalue, multiplicity)
    expected: tuple[tuple[float, int], ...]
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def _cluster(ev: np.ndarray, tol: float) -> list[tuple[float, int]]:
    out: list[list] = []
    for x in ev:
        if out and abs(out[-1][0] - x) < tol:
            out[-1][1] += 1
        else:
            out.append([float(x), 1])
    return [(v, m) for v, m in out]


def spectrum_check(g: Graph, arr: IntersectionArray) -> SpectrumCheck:
    """Numerical adjacency spectrum against the exact array spectrum."""
    observed = _cluster(graph_eigenvalues(g), 1e-6)
    sp = spectrum(arr)
    expected = []
    for th, m in zip(sp.eigenvalues, sp.multiplicities):
        expected.append((float(th), int(m) if sign(m - round(float(m))) == 0 else float(m)))
    bad = []
    if len(observed) != len(expected):
        bad.append(f"{len(observed)} distinct eigenvalues, array gives {len(expected)}")
    for (x, mx), (y, my) in zip(observed, expected):
        if abs(x - y) > ASSERT_TOL or mx != my:
            bad.append(f"observed {x:.9g}^{mx}, expected {y:.9g}^{my}")
    return SpectrumCheck(tuple(observed), tuple(expected), tuple(bad))


# ---------------------------------------------------------------------------
# the whole battery
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WitnessReport:
    witness: Witness
    graph: Graph
    distance: DistancePartitionCheck
    coclique: CocliqueReport | None
    interlacing: InterlacingReport | None
    spectrum: SpectrumCheck | None

    @property
    def failures(self) -> list[str]:
        out = []
        if not self.distance.ok:
            out.append(f"not distance-regular: {self.distance.witness}")
        elif format_array(self.distance.array) != self.witness.array:
            out.append(f"array {self.distance.array}, expected {self.witness.array}")
        for part in (self.coclique, self.interlacing, self.spectrum):
            if part is not None:
                out.extend(part.violations)
        return out

    @property
    def ok(self) -> bool:
        return not self.failures


def check_witness(name: str) -> WitnessReport:
    w = WITNESSES[name]
    g = w.build()
    dr = verify_distance_regular(g)
    if not dr.ok:
        return WitnessReport(w, g, dr, None, None, None)
    arr = dr.array
    return WitnessReport(w, g, dr, coclique_bound_check(g, arr),
                         interlacing_check(g, arr), spectrum_check(g, arr))
