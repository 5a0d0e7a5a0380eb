"""Bottleneck (matching) distance between persistence diagrams.

The distance is exact: it is always one of finitely many candidate costs,
and the smallest feasible one is found by binary search, testing each
threshold with a maximum bipartite matching.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import networkx as nx

from .persistence import PersistenceDiagram

Point = tuple[float, float]
DIAGONAL = None


def linf(a: Point, b: Point) -> float:
    return max(abs(a[0] - b[0]), abs(a[1] - b[1]))


def diagonal_cost(a: Point) -> float:
    return (a[1] - a[0]) / 2


@dataclass
class MatchingResult:
    degree: int
    distance: float
    # (point of D1 or None, point of D2 or None); None stands for the diagonal
    witness: list[tuple[Point | None, Point | None]] = field(default_factory=list)

    def witness_cost(self) -> float:
        cost = 0.0
        for a, b in self.witness:
            if a is None and b is None:
                continue
            if a is None:
                c = diagonal_cost(b)
            elif b is None:
                c = diagonal_cost(a)
            elif math.isinf(a[1]) and math.isinf(b[1]):
                c = abs(a[0] - b[0])
            else:
                c = linf(a, b)
            cost = max(cost, c)
        return cost

    def to_json(self) -> dict:
        def pt(x):
            if x is None:
                return "diagonal"
            return [x[0], "inf" if math.isinf(x[1]) else x[1]]

        return {
            "degree": self.degree,
            "distance": "inf" if math.isinf(self.distance) else self.distance,
            "witness": [[pt(a), pt(b)] for a, b in self.witness],
        }


def _perfect_matching(A: list[Point], B: list[Point], t: float) -> dict | None:
    """Perfect matching of the threshold-``t`` graph, or None if there is none."""
    g = nx.Graph()
    left = [("a", i) for i in range(len(A))] + [("db", j) for j in range(len(B))]
    right = [("b", j) for j in range(len(B))] + [("da", i) for i in range(len(A))]
    g.add_nodes_from(left, bipartite=0)
    g.add_nodes_from(right, bipartite=1)
    for i, a in enumerate(A):
        for j, b in enumerate(B):
            if linf(a, b) <= t:
                g.add_edge(("a", i), ("b", j))
        if diagonal_cost(a) <= t:
            g.add_edge(("a", i), ("da", i))
    for j, b in enumerate(B):
        if diagonal_cost(b) <= t:
            g.add_edge(("db", j), ("b", j))
        for i in range(len(A)):
            g.add_edge(("db", j), ("da", i))
    m = nx.bipartite.hopcroft_karp_matching(g, top_nodes=left)
    if sum(1 for x in left if x in m) < len(left):
        return None
    return m


def _finite_bottleneck(A: list[Point], B: list[Point]):
    if not A and not B:
        return 0.0, []
    cands = {0.0}
    cands.update(diagonal_cost(a) for a in A)
    cands.update(diagonal_cost(b) for b in B)
    cands.update(linf(a, b) for a in A for b in B)
    cands = sorted(cands)
    lo, hi = 0, len(cands) - 1
    # the largest candidate is always feasible (everything to the diagonal)
    best = _perfect_matching(A, B, cands[hi])
    while lo < hi:
        mid = (lo + hi) // 2
        m = _perfect_matching(A, B, cands[mid])
        if m is None:
            lo = mid + 1
        else:
            hi, best = mid, m
    if best is None:
        raise RuntimeError("no feasible matching found")
    t = cands[hi]
    witness = []
    for i, a in enumerate(A):
        kind, j = best[("a", i)]
        witness.append((a, B[j] if kind == "b" else None))
    for j, b in enumerate(B):
        kind, _ = best[("db", j)]
        if kind == "b":
            witness.append((None, b))
    return t, witness


def bottleneck_distance(D1: PersistenceDiagram, D2: PersistenceDiagram, degree: int) -> MatchingResult:
    """Bottleneck distance in one degree, with a witness matching.

    Essential classes match only essential classes (cost = birth gap);
    unequal essential counts give an infinite distance.
    """
    A, B = list(D1.finite(degree)), list(D2.finite(degree))
    dist, witness = _finite_bottleneck(A, B)
    e1, e2 = sorted(D1.infinite(degree)), sorted(D2.infinite(degree))
    if len(e1) != len(e2):
        return MatchingResult(degree, math.inf, witness)
    # on a line, the sorted pairing minimises the largest gap
    for x, y in zip(e1, e2):
        dist = max(dist, abs(x - y))
        witness.append(((x, math.inf), (y, math.inf)))
    return MatchingResult(degree, dist, witness)


def aggregate_bottleneck(D1: PersistenceDiagram, D2: PersistenceDiagram, degrees: Iterable[int] | None = None):
    """Max over degrees of the per-degree distance, plus the per-degree results."""
    if degrees is None:
        degrees = sorted(set(D1.degrees) | set(D2.degrees))
    results = {n: bottleneck_distance(D1, D2, n) for n in degrees}
    agg = max((r.distance for r in results.values()), default=0.0)
    return agg, results


def verify_stability(D1: PersistenceDiagram, D2: PersistenceDiagram, dG_upper: float, degrees=None, slack: float = 1e-9) -> bool:
    """Whether the diagram lower bound does not exceed the pseudo-distance upper bound."""
    agg, _ = aggregate_bottleneck(D1, D2, degrees)
    return agg <= dG_upper + slack
