"""Persistence of graded orbit chain complexes over GF(p).

Scalar grades (k = 1) are turned into diagrams by the standard
left-to-right column reduction.  For any k, persistent Betti numbers at a
single point ``(u, v)`` are evaluated from ranks of boundary submatrices.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np

from .complex_core import FieldSpec
from .symmetric_chains import OrbitChainComplex

TIEBREAK = "grade,dimension,representative"


@dataclass
class PersistenceDiagram:
    """Finite ``(birth, death)`` pairs and essential births, per degree."""

    pairs: dict[int, list[tuple[float, float]]] = field(default_factory=dict)
    essential: dict[int, list[float]] = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.pairs = {int(n): sorted((float(b), float(d)) for b, d in ps) for n, ps in self.pairs.items()}
        self.essential = {int(n): sorted(float(b) for b in es) for n, es in self.essential.items()}
        for n, ps in self.pairs.items():
            for b, d in ps:
                if not b <= d:
                    raise ValueError(f"degree {n}: birth {b} after death {d}")

    @property
    def degrees(self) -> list[int]:
        return sorted(set(self.pairs) | set(self.essential))

    def finite(self, n: int) -> list[tuple[float, float]]:
        return self.pairs.get(n, [])

    def infinite(self, n: int) -> list[float]:
        return self.essential.get(n, [])

    def same_points(self, other: "PersistenceDiagram", degrees=None) -> bool:
        """Exact multiset equality of pairs and essential births."""
        degs = set(self.degrees) | set(other.degrees) if degrees is None else degrees
        return all(
            self.finite(n) == other.finite(n) and self.infinite(n) == other.infinite(n)
            for n in degs
        )

    def __eq__(self, other):
        if not isinstance(other, PersistenceDiagram):
            return NotImplemented
        return self.same_points(other)

    def count(self, n: int, u: float, v: float) -> int:
        """Diagram-side persistent Betti number at ``u < v``."""
        fin = sum(1 for b, d in self.finite(n) if b <= u and v < d)
        return fin + sum(1 for b in self.infinite(n) if b <= u)

    def to_json(self) -> dict:
        out = {}
        for n in self.degrees:
            out[f"degree_{n}"] = {
                "pairs": [[b, d] for b, d in self.finite(n)],
                "essential": list(self.infinite(n)),
            }
        out["meta"] = dict(self.meta)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "PersistenceDiagram":
        if not isinstance(data, dict):
            raise ValueError("diagram JSON must be an object")
        pairs, ess = {}, {}
        for key, val in data.items():
            if key == "meta":
                continue
            if not key.startswith("degree_"):
                raise ValueError(f"diagram JSON: unexpected field {key!r}")
            try:
                n = int(key[len("degree_"):])
            except ValueError:
                raise ValueError(f"diagram JSON: bad degree key {key!r}") from None
            if not isinstance(val, dict):
                raise ValueError(f"diagram JSON: {key} must be an object")
            ps = val.get("pairs", [])
            if not all(isinstance(p, list) and len(p) == 2 for p in ps):
                raise ValueError(f"diagram JSON: {key}.pairs must hold [birth, death] pairs")
            pairs[n] = [(float(b), float(d)) for b, d in ps]
            ess[n] = [float(b) for b in val.get("essential", [])]
        return cls(pairs, ess, dict(data.get("meta", {})))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["degree", "birth", "death"])
        for n in self.degrees:
            for b, d in self.finite(n):
                w.writerow([n, f"{b:.12g}", f"{d:.12g}"])
            for b in self.infinite(n):
                w.writerow([n, f"{b:.12g}", "inf"])
        return buf.getvalue()


class ColumnReducer:
    """Left-to-right column reduction over GF(p) with a pivot cache.

    Columns are dicts ``row -> coefficient``; the pivot of a column is its
    largest row index.
    """

    def __init__(self, p: int):
        self.p = p
        self.pivot_col: dict[int, dict[int, int]] = {}

    def reduce(self, col: dict[int, int]) -> dict[int, int]:
        p = self.p
        col = {i: c % p for i, c in col.items() if c % p}
        while col:
            low = max(col)
            other = self.pivot_col.get(low)
            if other is None:
                break
            factor = (col[low] * pow(other[low], p - 2, p)) % p
            for i, c in other.items():
                x = (col.get(i, 0) - factor * c) % p
                if x:
                    col[i] = x
                else:
                    col.pop(i, None)
        return col

    def add(self, col: dict[int, int]) -> int | None:
        """Reduce and register ``col``; return its pivot row, or None if it vanished."""
        col = self.reduce(col)
        if not col:
            return None
        low = max(col)
        self.pivot_col[low] = col
        return low


def sparse_rank(columns, p: int) -> int:
    red = ColumnReducer(p)
    return sum(1 for col in columns if red.add(col) is not None)


def _field(occ: OrbitChainComplex, field) -> FieldSpec:
    if field is None:
        return occ.field
    return field if isinstance(field, FieldSpec) else FieldSpec(field)


def filtration_order(occ: OrbitChainComplex) -> list[tuple[int, int]]:
    """All ``(dim, index)`` cells sorted by grade, then dimension, then representative."""
    cells = []
    for n, elems in enumerate(occ.basis):
        for j, e in enumerate(elems):
            cells.append((float(occ.grades[n][j, 0]), n, e.representative, j))
    cells.sort()
    return [(n, j) for _, n, _, j in cells]


def compute_persistence(occ: OrbitChainComplex, field: FieldSpec | int | None = None, check: bool = True) -> PersistenceDiagram:
    """Persistence diagram of a scalar-graded orbit chain complex.

    Pairs with zero persistence are dropped; classes that never die are
    reported as essential births.
    """
    fld = _field(occ, field)
    p = fld.p
    if occ.k != 1:
        raise ValueError(f"diagrams need scalar grades, got k = {occ.k}; use pbnf_rank instead")
    if check:
        if not occ.check_boundary_squared(p):
            raise RuntimeError("boundary of boundary is nonzero; corrupted orbit complex")
        if occ.check_monotone():
            raise ValueError("grades are not monotone along boundaries; not a filtration")

    order = filtration_order(occ)
    position = {cell: idx for idx, cell in enumerate(order)}
    grade = [float(occ.grades[n][j, 0]) for n, j in order]
    dim = [n for n, _ in order]

    red = ColumnReducer(p)
    killed = set()
    paired_with: dict[int, int] = {}
    for idx, (n, j) in enumerate(order):
        if n == 0:
            continue
        col = {position[(n - 1, i)]: c for i, c in occ.boundary[n][j].items()}
        low = red.add(col)
        if low is not None:
            killed.add(low)
            paired_with[idx] = low

    pairs: dict[int, list] = {n: [] for n in range(len(occ.basis))}
    essential: dict[int, list] = {n: [] for n in range(len(occ.basis))}
    for death_idx, birth_idx in paired_with.items():
        b, d = grade[birth_idx], grade[death_idx]
        if b != d:
            pairs[dim[birth_idx]].append((b, d))
    for idx in range(len(order)):
        if idx not in killed and idx not in paired_with:
            essential[dim[idx]].append(grade[idx])
    meta = {"field": p, "operator": occ.operator, "tiebreak": TIEBREAK, "group_order": occ.group_order}
    return PersistenceDiagram(pairs, essential, meta)


def _dominated(grades: np.ndarray, u: np.ndarray) -> np.ndarray:
    if grades.size == 0:
        return np.zeros(grades.shape[0], dtype=bool)
    return np.all(grades <= u, axis=1)


def pbnf_rank(occ: OrbitChainComplex, n: int, u, v, field: FieldSpec | int | None = None) -> int:
    """Rank of H_n(sublevel u) -> H_n(sublevel v) for ``u`` strictly below ``v``.

    Uses only ranks:
    ``dim Z_u = #C_n^u - rank d_n|u`` and
    ``dim(Z_u cap B_v) = rank d_{n+1}|v - rank(rows outside C_n^u of d_{n+1}|v)``.
    """
    p = _field(occ, field).p
    k = occ.k
    u = np.broadcast_to(np.asarray(u, dtype=float), (k,))
    v = np.broadcast_to(np.asarray(v, dtype=float), (k,))
    if not np.all(u < v):
        raise ValueError(f"persistent Betti numbers need u strictly below v, got u={u}, v={v}")
    if n < 0 or n >= len(occ.basis):
        return 0
    in_u = _dominated(occ.grades[n], u)
    cols_u = np.flatnonzero(in_u)
    if cols_u.size == 0:
        return 0
    if n > 0:
        rank_du = sparse_rank((occ.boundary[n][j] for j in cols_u), p)
    else:
        rank_du = 0
    dim_z = cols_u.size - rank_du
    if dim_z == 0:
        return 0
    if n + 1 >= len(occ.basis):
        return dim_z
    cols_v = np.flatnonzero(_dominated(occ.grades[n + 1], v))
    up = [occ.boundary[n + 1][j] for j in cols_v]
    rank_b = sparse_rank(up, p)
    outside = [{i: c for i, c in col.items() if not in_u[i]} for col in up]
    rank_out = sparse_rank(outside, p)
    return dim_z - (rank_b - rank_out)

