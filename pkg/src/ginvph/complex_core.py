"""Finite simplicial complexes carrying vertex-valued filtering functions.

Simplices are stored as strictly ascending vertex tuples, grouped by
dimension.  A simplex is graded by the componentwise maximum of the
function over its vertices (lower-star convention), so the sublevel
complex at ``u`` is exactly the set of simplices whose grade is ``<= u``
in every component.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

Simplex = tuple[int, ...]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


@dataclass(frozen=True)
class FieldSpec:
    """Prime field GF(p), 2 <= p < 2**16."""

    characteristic: int = 2

    def __post_init__(self):
        p = self.characteristic
        if not isinstance(p, (int, np.integer)) or not _is_prime(int(p)):
            raise ValueError(f"field characteristic must be prime, got {p!r}")
        if p >= 1 << 16:
            raise ValueError(f"field characteristic must be < 2**16, got {p}")
        object.__setattr__(self, "characteristic", int(p))

    @property
    def p(self) -> int:
        return self.characteristic

    def inverse(self, a: int) -> int:
        a %= self.characteristic
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return pow(a, self.characteristic - 2, self.characteristic)


GF2 = FieldSpec(2)


def closure(cells: Iterable[Sequence[int]]) -> list[list[Simplex]]:
    """All faces of the given cells, per dimension, each list sorted."""
    by_dim: dict[int, set[Simplex]] = {}
    for cell in cells:
        s = tuple(sorted(int(v) for v in cell))
        if len(set(s)) != len(s):
            raise ValueError(f"simplex {list(cell)} repeats a vertex")
        if not s:
            raise ValueError("empty simplex")
        for r in range(1, len(s) + 1):
            by_dim.setdefault(r - 1, set()).update(itertools.combinations(s, r))
    top = max(by_dim, default=-1)
    return [sorted(by_dim.get(d, ())) for d in range(top + 1)]


@dataclass(frozen=True)
class SimplicialComplex:
    vertex_count: int
    simplices: tuple[tuple[Simplex, ...], ...]

    def __post_init__(self):
        simplices = tuple(tuple(tuple(int(v) for v in s) for s in layer) for layer in self.simplices)
        object.__setattr__(self, "simplices", simplices)
        if self.vertex_count < 0:
            raise ValueError("vertex_count must be non-negative")
        for d, layer in enumerate(simplices):
            if len(set(layer)) != len(layer):
                raise ValueError(f"duplicate simplices in dimension {d}")
            for s in layer:
                if len(s) != d + 1:
                    raise ValueError(f"simplex {s} listed in dimension {d}")
                if any(b <= a for a, b in zip(s, s[1:])):
                    raise ValueError(f"simplex {s} is not strictly ascending")
                if s and (s[0] < 0 or s[-1] >= self.vertex_count):
                    raise ValueError(f"simplex {s} has a vertex outside 0..{self.vertex_count - 1}")
        index = self.index
        for d in range(1, len(simplices)):
            for s in simplices[d]:
                for face in faces(s):
                    if face not in index:
                        raise ValueError(f"face {face} of {s} is missing (complex not closed)")

    @classmethod
    def from_cells(cls, vertex_count: int, cells: Iterable[Sequence[int]]) -> "SimplicialComplex":
        """Build the closure of ``cells``; isolated vertices are added for every index."""
        layers = closure(cells)
        if not layers:
            layers = [[]]
        layers[0] = [(v,) for v in range(vertex_count)]
        return cls(vertex_count, tuple(tuple(layer) for layer in layers))

    @property
    def dimension(self) -> int:
        return len(self.simplices) - 1

    def layer(self, d: int) -> tuple[Simplex, ...]:
        if 0 <= d < len(self.simplices):
            return self.simplices[d]
        return ()

    def __iter__(self):
        for layer in self.simplices:
            yield from layer

    def __len__(self) -> int:
        return sum(len(layer) for layer in self.simplices)

    def __contains__(self, s) -> bool:
        return tuple(s) in self.index

    @cached_property
    def index(self) -> dict[Simplex, int]:
        """Simplex -> position within its dimension layer."""
        return {s: i for layer in self.simplices for i, s in enumerate(layer)}

    def top_cells(self) -> list[Simplex]:
        """Maximal simplices (those that are not a face of anything stored)."""
        covered: set[Simplex] = set()
        for layer in self.simplices[1:]:
            for s in layer:
                covered.update(faces(s))
        return [s for s in self if s not in covered]


def faces(s: Simplex) -> list[Simplex]:
    """Codimension-one faces; face ``i`` omits vertex ``s[i]``."""
    if len(s) <= 1:
        return []
    return [s[:i] + s[i + 1:] for i in range(len(s))]


@dataclass(frozen=True)
class VertexFunction:
    """One finite k-tuple per vertex, stored as an (N, k) float array."""

    values: np.ndarray

    def __post_init__(self):
        vals = np.array(self.values, dtype=float)
        if vals.ndim == 1:
            vals = vals[:, None]
        if vals.ndim != 2 or (vals.shape[0] > 0 and vals.shape[1] < 1):
            raise ValueError(f"vertex values must have shape (N, k), got {vals.shape}")
        if not np.all(np.isfinite(vals)):
            bad = int(np.argwhere(~np.isfinite(vals))[0, 0])
            raise ValueError(f"non-finite value at vertex {bad}")
        vals = vals + 0.0  # no negative zeros
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def k(self) -> int:
        return self.values.shape[1]

    def __len__(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True)
class FilteredComplex:
    complex: SimplicialComplex
    function: VertexFunction
    grades: tuple[np.ndarray, ...] = field(repr=False, default=())

    @property
    def k(self) -> int:
        return self.function.k

    @property
    def values(self) -> np.ndarray:
        return self.function.values

    def grade(self, s: Sequence[int]) -> np.ndarray:
        s = tuple(s)
        return self.grades[len(s) - 1][self.complex.index[s]]


def build_filtered_complex(complex: SimplicialComplex, f) -> FilteredComplex:
    """Attach vertex values to ``complex`` and grade every simplex by the vertex maximum."""
    if not isinstance(f, VertexFunction):
        f = VertexFunction(f)
    if len(f) != complex.vertex_count:
        raise ValueError(
            f"function has {len(f)} values but the complex has {complex.vertex_count} vertices"
        )
    grades = []
    for layer in complex.simplices:
        if layer:
            idx = np.array(layer, dtype=np.intp)
            g = f.values[idx].max(axis=1)
        else:
            g = np.empty((0, f.k))
        g.setflags(write=False)
        grades.append(g)
    return FilteredComplex(complex, f, tuple(grades))


def sublevel_complex(fc: FilteredComplex, u) -> SimplicialComplex:
    """Simplices whose grade is componentwise <= ``u``."""
    u = np.broadcast_to(np.asarray(u, dtype=float), (fc.k,))
    if not np.all(np.isfinite(u)):
        raise ValueError("sublevel threshold must be finite")
    layers = []
    for layer, g in zip(fc.complex.simplices, fc.grades):
        keep = np.all(g <= u, axis=1) if len(layer) else np.zeros(0, bool)
        layers.append(tuple(s for s, ok in zip(layer, keep) if ok))
    while len(layers) > 1 and not layers[-1]:
        layers.pop()
    return SimplicialComplex(fc.complex.vertex_count, tuple(layers))


def barycentric_subdivide(fc: FilteredComplex) -> tuple[FilteredComplex, list[Simplex]]:
    """Barycentric subdivision with barycenter values equal to the simplex grade.

    Returns the subdivided filtered complex and the list mapping each new
    vertex to the original simplex it is the barycenter of.  New vertices are
    numbered in dimension order, so original vertex ``v`` keeps index ``v``.
    """
    old = fc.complex
    barycenters: list[Simplex] = [s for s in old]
    new_index = {s: i for i, s in enumerate(barycenters)}
    values = np.concatenate([g for g in fc.grades if len(g)], axis=0) if len(old) else np.empty((0, fc.k))

    # a flag sigma_0 < ... < sigma_d becomes a d-simplex on their barycenters
    cells: list[Simplex] = []
    for s in old.top_cells():
        for order in itertools.permutations(s):
            flag = [tuple(sorted(order[: r + 1])) for r in range(len(order))]
            cells.append(tuple(sorted(new_index[t] for t in flag)))
    sub = SimplicialComplex.from_cells(len(barycenters), cells)
    return build_filtered_complex(sub, values), barycenters


def subdivide_permutation(barycenters: Sequence[Simplex], perm: Sequence[int]) -> tuple[int, ...]:
    """Vertex permutation of the subdivision induced by a vertex permutation of the original."""
    where = {s: i for i, s in enumerate(barycenters)}
    return tuple(where[tuple(sorted(perm[v] for v in s))] for s in barycenters)


# -- JSON --------------------------------------------------------------------

def complex_from_json(data: dict) -> tuple[SimplicialComplex, VertexFunction | None]:
    """Parse ``{"vertices": N, "simplices": [...], "values": [...]}``."""
    if not isinstance(data, dict):
        raise ValueError("complex JSON must be an object")
    if "vertices" not in data:
        raise ValueError("complex JSON: missing field 'vertices'")
    n = data["vertices"]
    if not isinstance(n, int) or n < 0:
        raise ValueError("complex JSON: field 'vertices' must be a non-negative integer")
    cells = data.get("simplices", [])
    if not isinstance(cells, list) or not all(isinstance(c, list) for c in cells):
        raise ValueError("complex JSON: field 'simplices' must be a list of vertex lists")
    for i, c in enumerate(cells):
        if not all(isinstance(v, int) for v in c):
            raise ValueError(f"complex JSON: simplices[{i}] must hold integers")
    cx = SimplicialComplex.from_cells(n, cells)
    values = data.get("values")
    f = None if values is None else values_from_json(values)
    return cx, f


def values_from_json(data) -> VertexFunction:
    """Accept ``[[..],..]``, ``[..]`` or ``{"values": ...}``."""
    if isinstance(data, dict):
        if "values" not in data:
            raise ValueError("values JSON: missing field 'values'")
        data = data["values"]
    if not isinstance(data, list):
        raise ValueError("values JSON: expected a list")
    try:
        arr = np.array(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"values JSON: {exc}") from None
    return VertexFunction(arr)


def complex_to_json(cx: SimplicialComplex, f: VertexFunction | None = None) -> dict:
    out = {"vertices": cx.vertex_count, "simplices": [list(s) for s in cx.top_cells()]}
    if f is not None:
        out["values"] = f.values.tolist()
    return out
