"""Upper bounds for the natural pseudo-distance over a finite group sample.

The natural pseudo-distance is an infimum over a (possibly continuous)
group, so only upper bounds can be certified from samples; lower bounds
come from diagram distances.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .complex_core import FilteredComplex
from .group_action import GroupSample, Perm, as_perm, is_automorphism


@dataclass
class BoundResult:
    value: float
    argmin: object
    argmin_index: int
    sample_size: int

    def to_json(self) -> dict:
        arg = list(self.argmin) if isinstance(self.argmin, tuple) else self.argmin
        return {
            "value": self.value,
            "argmin_index": self.argmin_index,
            "argmin": arg,
            "sample_size": self.sample_size,
        }


def _check_pair(fc_phi: FilteredComplex, fc_psi: FilteredComplex) -> None:
    if fc_phi.complex != fc_psi.complex:
        raise ValueError("the two filtered complexes live on different complexes")
    if fc_phi.k != fc_psi.k:
        raise ValueError(f"codomain dimensions differ: {fc_phi.k} vs {fc_psi.k}")


def sup_distance(phi: np.ndarray, psi_moved: np.ndarray) -> float:
    """max over vertices of the inf-norm difference."""
    if phi.size == 0:
        return 0.0
    return float(np.max(np.abs(phi - psi_moved)))


def dG_upper_bound(fc_phi: FilteredComplex, fc_psi: FilteredComplex, sample: GroupSample | Sequence[Perm]) -> BoundResult:
    """min over sampled g of max_x |phi(x) - psi(g(x))|, with the first minimiser."""
    _check_pair(fc_phi, fc_psi)
    elems = list(sample)
    if not elems:
        raise ValueError("empty group sample")
    n = fc_phi.complex.vertex_count
    best, best_i = np.inf, -1
    for i, g in enumerate(elems):
        g = as_perm(g, n)
        if not is_automorphism(fc_phi.complex, g):
            raise ValueError(f"sample element {i} is not a simplicial automorphism")
        val = sup_distance(fc_phi.values, fc_psi.values[np.array(g, dtype=np.intp)])
        if val < best:
            best, best_i = val, i
    return BoundResult(float(best), tuple(elems[best_i]), best_i, len(elems))


def classical_dHomeo_witness(fc_phi: FilteredComplex, fc_psi: FilteredComplex, f: Sequence[int]) -> float:
    """max_x |phi(x) - psi(f(x))| for a vertex map ``f``; 0 certifies phi = psi o f."""
    _check_pair(fc_phi, fc_psi)
    f = np.asarray(f, dtype=np.intp)
    n = fc_phi.complex.vertex_count
    if f.shape != (n,) or (n and (f.min() < 0 or f.max() >= n)):
        raise ValueError("witness map must send each vertex to a vertex")
    return sup_distance(fc_phi.values, fc_psi.values[f])


def dG_upper_bound_isometric(
    coords: np.ndarray,
    phi_values: np.ndarray,
    psi: Callable[[np.ndarray], np.ndarray],
    transforms: Sequence[Callable[[np.ndarray], np.ndarray]],
) -> BoundResult:
    """Same bound for transformations that need not permute vertices.

    ``psi`` must be defined on the ambient space, so ``psi(g(x))`` can be
    evaluated at moved vertex positions.  The max is taken over vertices
    only, so it is a vertex-sampled estimate of each sup.
    """
    if not transforms:
        raise ValueError("empty group sample")
    phi = np.asarray(phi_values, dtype=float).reshape(len(coords), -1)
    best, best_i = np.inf, -1
    for i, g in enumerate(transforms):
        moved = np.asarray(psi(g(coords)), dtype=float).reshape(phi.shape)
        val = sup_distance(phi, moved)
        if val < best:
            best, best_i = val, i
    return BoundResult(float(best), best_i, best_i, len(transforms))
