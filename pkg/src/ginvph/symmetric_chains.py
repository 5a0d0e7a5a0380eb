"""Chain complexes of H-symmetric chains.

For a free action of a finite group ``H`` on a simplicial complex, every
chain fixed by ``H`` is a unique combination of orbit sums
``sum_h h(sigma)``.  Those orbit sums form the basis used here; each is
graded by the maximum (or, optionally, the mean) of its members' grades.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .complex_core import GF2, FieldSpec, FilteredComplex, Simplex, build_filtered_complex, faces
from .group_action import GroupAction, Perm, is_automorphism, validate_action

Operator = Literal["max", "mean"]


class NonFreeActionError(ValueError):
    pass


def sort_sign(seq) -> int:
    """Parity of the permutation sorting ``seq`` (distinct entries): +1 or -1."""
    seq = list(seq)
    sign = 1
    # count inversions; simplices are tiny
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


@dataclass(frozen=True)
class OrbitBasisElement:
    dim: int
    representative: Simplex
    members: tuple[tuple[Simplex, int], ...]


@dataclass(frozen=True)
class OrbitChainComplex:
    """Orbit bases, integral boundary columns and per-orbit grades.

    ``boundary[n][j]`` maps row indices of dimension ``n - 1`` orbits to the
    integer coefficient of that orbit in the boundary of orbit ``j``.
    Coefficients are reduced into a field only when a field is chosen.
    """

    basis: tuple[tuple[OrbitBasisElement, ...], ...]
    boundary: tuple[tuple[dict[int, int], ...], ...] = field(repr=False)
    grades: tuple[np.ndarray, ...] = field(repr=False)
    group_order: int = 1
    operator: str = "max"
    field: FieldSpec = GF2

    @property
    def k(self) -> int:
        for g in self.grades:
            if g.size:
                return g.shape[1]
        return self.grades[0].shape[1] if self.grades else 1

    @property
    def top_dim(self) -> int:
        return len(self.basis) - 1

    def size(self, n: int) -> int:
        return len(self.basis[n]) if 0 <= n < len(self.basis) else 0

    def __len__(self) -> int:
        return sum(len(b) for b in self.basis)

    def column(self, n: int, j: int, p: int | None = None) -> dict[int, int]:
        col = self.boundary[n][j]
        if p is None:
            return dict(col)
        out = {}
        for i, c in col.items():
            c %= p
            if c:
                out[i] = c
        return out

    def boundary_dense(self, n: int, p: int | None = None) -> np.ndarray:
        """Dense ``size(n-1) x size(n)`` boundary matrix, optionally reduced mod ``p``."""
        m = np.zeros((self.size(n - 1), self.size(n)), dtype=np.int64)
        if 0 < n < len(self.basis):
            for j, col in enumerate(self.boundary[n]):
                for i, c in col.items():
                    m[i, j] = c
        return m % p if p is not None else m

    def check_boundary_squared(self, p: int | None = None) -> bool:
        """Whether the composite of consecutive boundary maps vanishes (over Z, or mod p)."""
        for n in range(2, len(self.basis)):
            lower = self.boundary[n - 1]
            for col in self.boundary[n]:
                acc: dict[int, int] = {}
                for i, c in col.items():
                    for r, x in lower[i].items():
                        acc[r] = acc.get(r, 0) + c * x
                if any((x % p if p is not None else x) for x in acc.values()):
                    return False
        return True

    def check_monotone(self) -> list[tuple[int, int, int]]:
        """Violations ``(n, column, row)`` of face grade <= coface grade."""
        bad = []
        for n in range(1, len(self.basis)):
            for j, col in enumerate(self.boundary[n]):
                for i in col:
                    if np.any(self.grades[n - 1][i] > self.grades[n][j]):
                        bad.append((n, j, i))
        return bad

    def to_triplets(self, n: int, p: int | None = None) -> str:
        """Sparse ``row col coeff`` dump of one boundary matrix, one entry per line."""
        p = self.field.p if p is None else p
        lines = [f"# boundary {n}: {self.size(n - 1)} x {self.size(n)} over GF({p})"]
        if 0 < n < len(self.basis):
            for j, col in enumerate(self.boundary[n]):
                for i in sorted(col):
                    c = col[i] % p
                    if c:
                        lines.append(f"{i} {j} {c}")
        return "\n".join(lines) + "\n"


def build_orbit_complex(
    fc: FilteredComplex,
    H: GroupAction | None = None,
    operator: Operator = "max",
    field: FieldSpec = GF2,
) -> OrbitChainComplex:
    cx = fc.complex
    if H is None:
        H = GroupAction.trivial(cx.vertex_count)
    if operator not in ("max", "mean"):
        raise ValueError(f"unknown grade operator {operator!r}")
    if not isinstance(field, FieldSpec):
        field = FieldSpec(field)
    report = validate_action(cx, H)
    if not report.automorphism.passed:
        h, s = report.automorphism.failures[0]
        raise ValueError(f"group element {list(h)} does not map simplex {list(s)} into the complex")
    if not report.freeness.passed:
        h, s = report.freeness.failures[0]
        raise NonFreeActionError(f"action is not free: {list(h)} fixes simplex {list(s)}")

    member_of: dict[Simplex, tuple[int, int]] = {}
    basis: list[tuple[OrbitBasisElement, ...]] = []
    grades: list[np.ndarray] = []
    for d, layer in enumerate(cx.simplices):
        elems = []
        g_rows = []
        layer_grades = fc.grades[d]
        for s in layer:
            if s in member_of:
                continue
            # layers are sorted, so the first unseen member is the smallest
            members = []
            for h in H.elements:
                img = tuple(h[v] for v in s)
                t = tuple(sorted(img))
                sign = sort_sign(img)
                member_of[t] = (len(elems), sign)
                members.append((t, sign))
            elems.append(OrbitBasisElement(d, s, tuple(members)))
            mg = layer_grades[[cx.index[t] for t, _ in members]]
            g_rows.append(mg.max(axis=0) if operator == "max" else mg.mean(axis=0))
        basis.append(tuple(elems))
        grades.append(np.array(g_rows, dtype=float).reshape(len(elems), fc.k))

    boundary: list[tuple[dict[int, int], ...]] = [tuple({} for _ in basis[0])] if basis else []
    for d in range(1, len(basis)):
        reps = {e.representative for e in basis[d - 1]}
        cols = []
        for e in basis[d]:
            col: dict[int, int] = {}
            for t, sign in e.members:
                for i, f in enumerate(faces(t)):
                    # coefficient of an orbit = coefficient on its representative
                    if f in reps:
                        row = member_of[f][0]
                        col[row] = col.get(row, 0) + (sign if i % 2 == 0 else -sign)
            cols.append({i: c for i, c in col.items() if c})
        boundary.append(tuple(cols))

    for g in grades:
        g.setflags(write=False)
    return OrbitChainComplex(tuple(basis), tuple(boundary), tuple(grades), H.order, operator, field)


def apply_group_element(fc: FilteredComplex, g: Perm) -> FilteredComplex:
    """Pull the vertex values back along ``g``: the new value at ``v`` is ``f(g(v))``."""
    g = tuple(int(x) for x in g)
    if not is_automorphism(fc.complex, g):
        raise ValueError("group element is not a simplicial automorphism of the complex")
    return build_filtered_complex(fc.complex, fc.values[np.array(g, dtype=np.intp)])
