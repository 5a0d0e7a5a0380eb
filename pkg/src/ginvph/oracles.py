"""Independent checks for the persistence engine.

Nothing here touches the column reduction in :mod:`ginvph.persistence`.
Ranks come from plain dense Gaussian elimination over GF(p), applied
straight to the definition of the persistent homology group: cycles of
the sublevel at ``u`` modulo boundaries of the sublevel at ``v``.
"""

from __future__ import annotations

import numpy as np

from .complex_core import FieldSpec, FilteredComplex, SimplicialComplex, VertexFunction, build_filtered_complex
from .group_action import GroupAction, image, validate_action
from .symmetric_chains import OrbitChainComplex

MAX_BASIS = 2000


class OracleTooLarge(ValueError):
    pass


class QuotientError(ValueError):
    pass


def _echelon(M: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p and the pivot columns."""
    R = np.array(M, dtype=np.int64) % p
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            R[[r, k]] = R[[k, r]]
        R[r] = (R[r] * pow(int(R[r, c]), p - 2, p)) % p
        factors = R[:, c].copy()
        factors[r] = 0
        hit = np.flatnonzero(factors)
        if hit.size:
            R[hit] = (R[hit] - np.outer(factors[hit], R[r])) % p
        pivots.append(c)
        r += 1
    return R, pivots


def dense_rank(M: np.ndarray, p: int) -> int:
    if M.size == 0:
        return 0
    return len(_echelon(M, p)[1])


def nullspace(M: np.ndarray, p: int) -> np.ndarray:
    """Columns spanning the kernel of ``M`` over GF(p)."""
    rows, cols = M.shape
    if cols == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if rows == 0:
        return np.eye(cols, dtype=np.int64)
    R, pivots = _echelon(M, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((cols, len(free)), dtype=np.int64)
    for k, f in enumerate(free):
        basis[f, k] = 1
        for r, pc in enumerate(pivots):
            basis[pc, k] = (-R[r, f]) % p
    return basis


def _signed_boundary(rows: list[tuple[int, ...]], cols: list[tuple[int, ...]]) -> np.ndarray:
    where = {s: i for i, s in enumerate(rows)}
    M = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for j, s in enumerate(cols):
        for i in range(len(s)):
            M[where[s[:i] + s[i + 1:]], j] += (-1) ** i
    return M


class _Chains:
    """Graded chain groups and boundary matrices, from either input kind."""

    def __init__(self, obj):
        if isinstance(obj, OrbitChainComplex):
            top = len(obj.basis)
            self.grades = [np.asarray(obj.grades[n]) for n in range(top)]
            self.bd = [obj.boundary_dense(n) for n in range(top + 1)]
        elif isinstance(obj, FilteredComplex):
            layers = [list(layer) for layer in obj.complex.simplices]
            top = len(layers)
            self.grades = [np.asarray(obj.grades[n]) for n in range(top)]
            self.bd = [np.zeros((0, len(layers[0])), dtype=np.int64)]
            for n in range(1, top):
                self.bd.append(_signed_boundary(layers[n - 1], layers[n]))
            self.bd.append(np.zeros((len(layers[-1]), 0), dtype=np.int64))
        else:
            raise TypeError(f"expected FilteredComplex or OrbitChainComplex, got {type(obj).__name__}")
        total = sum(len(g) for g in self.grades)
        if total > MAX_BASIS:
            raise OracleTooLarge(f"{total} basis elements exceed the oracle cap {MAX_BASIS}")
        self.top = len(self.grades)

    def k(self) -> int:
        for g in self.grades:
            if g.size:
                return g.shape[1]
        return 1

    def mask(self, n: int, u) -> np.ndarray:
        if not 0 <= n < self.top:
            return np.zeros(0, dtype=bool)
        g = self.grades[n]
        if g.size == 0:
            return np.zeros(len(g), dtype=bool)
        return np.all(g <= u, axis=1)

    def boundary(self, n: int) -> np.ndarray:
        """Matrix of d_n : C_n -> C_{n-1}."""
        if 1 <= n < self.top:
            return self.bd[n]
        if n == 0:
            return np.zeros((0, len(self.grades[0])), dtype=np.int64)
        rows = len(self.grades[n - 1]) if 0 <= n - 1 < self.top else 0
        return np.zeros((rows, 0), dtype=np.int64)

    def cycles(self, n: int, u, p: int) -> np.ndarray:
        """Basis of Z_n at level u, as columns in full C_n coordinates."""
        m = self.mask(n, u)
        cols = np.flatnonzero(m)
        Z = np.zeros((len(m), 0), dtype=np.int64)
        if cols.size:
            D = self.boundary(n)[:, cols]
            K = nullspace(D, p)
            Z = np.zeros((len(m), K.shape[1]), dtype=np.int64)
            Z[cols] = K
        return Z

    def boundaries(self, n: int, v) -> np.ndarray:
        """Spanning set of B_n at level v, columns in C_n coordinates."""
        if n + 1 >= self.top:
            return np.zeros((len(self.grades[n]), 0), dtype=np.int64)
        return self.boundary(n + 1)[:, np.flatnonzero(self.mask(n + 1, v))]


def _persistent_rank(Z: np.ndarray, B: np.ndarray, p: int) -> int:
    # dim Z - dim(Z cap B) = dim(Z + B) - dim B
    if Z.shape[1] == 0:
        return 0
    return dense_rank(np.hstack([Z, B]), p) - dense_rank(B, p)


def brute_force_pbnf(obj, n: int, u, v, field: FieldSpec | int = 2, strict: bool = True) -> int:
    """Rank of H_n(sublevel u) -> H_n(sublevel v), straight from the definition."""
    p = field.p if isinstance(field, FieldSpec) else FieldSpec(field).p
    ch = _Chains(obj)
    k = ch.k()
    u = np.broadcast_to(np.asarray(u, dtype=float), (k,))
    v = np.broadcast_to(np.asarray(v, dtype=float), (k,))
    if strict and not np.all(u < v):
        raise ValueError("u must be strictly below v")
    if not np.all(u <= v):
        raise ValueError("u must lie below v")
    if not 0 <= n < ch.top:
        return 0
    return _persistent_rank(ch.cycles(n, u, p), ch.boundaries(n, v), p)


def brute_force_diagram(obj, field: FieldSpec | int = 2) -> dict[int, tuple[list[tuple[float, float]], list[float]]]:
    """Diagram recovered from persistent ranks at all pairs of grade values.

    Multiplicity of (t_i, t_j) is the usual inclusion-exclusion of ranks
    between consecutive critical values.  Returns ``{n: (pairs, essential)}``
    with both lists sorted.
    """
    p = field.p if isinstance(field, FieldSpec) else FieldSpec(field).p
    ch = _Chains(obj)
    if ch.k() != 1:
        raise ValueError("diagrams need scalar grades")
    ts = sorted({float(x) for g in ch.grades for x in g.ravel()})
    m = len(ts)
    out = {}
    for n in range(ch.top):
        Zs = [ch.cycles(n, t, p) for t in ts]
        Bs = [ch.boundaries(n, t) for t in ts]
        rank_B = [dense_rank(B, p) for B in Bs]
        rho = np.zeros((m + 1, m + 1), dtype=np.int64)  # index 0 is "below everything"
        for i in range(1, m + 1):
            Z = Zs[i - 1]
            if Z.shape[1] == 0:
                continue
            for j in range(i, m + 1):
                rho[i, j] = dense_rank(np.hstack([Z, Bs[j - 1]]), p) - rank_B[j - 1]
        pairs, ess = [], []
        for i in range(1, m + 1):
            for j in range(i + 1, m + 1):
                mult = rho[i, j - 1] - rho[i - 1, j - 1] - rho[i, j] + rho[i - 1, j]
                if mult < 0:
                    raise AssertionError("negative multiplicity; ranks are inconsistent")
                pairs += [(ts[i - 1], ts[j - 1])] * int(mult)
            ess += [ts[i - 1]] * int(rho[i, m] - rho[i - 1, m])
        out[n] = (sorted(pairs), sorted(ess))
    return out


def quotient_complex(cx: SimplicialComplex, H: GroupAction) -> tuple[SimplicialComplex, list[int]]:
    """Quotient by a free action whose quotient is again a simplicial complex.

    Quotient vertices are the vertex orbits, numbered by smallest member.
    Returns the quotient and the map vertex -> quotient vertex.
    """
    report = validate_action(cx, H)
    if not report.engine_ok:
        raise QuotientError("quotient needs a free action by simplicial automorphisms")
    if not report.regularity.passed:
        h, s = report.regularity.failures[0]
        raise QuotientError(
            f"simplex {list(s)} has two vertices in one orbit; "
            "barycentric_subdivide the complex (twice suffices) and retry"
        )
    orbit_map = [0] * cx.vertex_count
    for q, orb in enumerate(H.vertex_orbits()):
        for x in orb:
            orbit_map[x] = q
    seen: dict[tuple[int, ...], tuple[int, ...]] = {}
    for s in cx:
        t = tuple(sorted(orbit_map[x] for x in s))
        rep = min(image(h, s) for h in H)
        if seen.setdefault(t, rep) != rep:
            raise QuotientError(
                f"two simplex orbits collapse onto {list(t)}; "
                "barycentric_subdivide the complex (twice suffices) and retry"
            )
    return SimplicialComplex.from_cells(len(H.vertex_orbits()), list(seen)), orbit_map


def quotient_function(f: VertexFunction, orbit_map: list[int]) -> VertexFunction:
    """Max of the values over each orbit."""
    q = max(orbit_map, default=-1) + 1
    vals = np.full((q, f.k), -np.inf)
    for x, o in enumerate(orbit_map):
        vals[o] = np.maximum(vals[o], f.values[x])
    return VertexFunction(vals)


def quotient_filtered(fc: FilteredComplex, H: GroupAction) -> FilteredComplex:
    qcx, orbit_map = quotient_complex(fc.complex, H)
    return build_filtered_complex(qcx, quotient_function(fc.function, orbit_map))
