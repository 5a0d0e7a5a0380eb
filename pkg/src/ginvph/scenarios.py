"""Deterministic test scenarios.

``circle_rooms``: a 2n-gon with two room profiles that differ only by a
reparametrisation of the circle, under the antipodal symmetry.
``two_spheres``: two ring-triangulated 2-spheres swapped by the symmetry,
with heights ``x3`` and ``+-x3``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .complex_core import (
    FilteredComplex,
    SimplicialComplex,
    VertexFunction,
    build_filtered_complex,
    complex_to_json,
)
from .group_action import GroupAction, GroupSample, Perm, enumerate_group, group_to_json

GENERATOR_VERSION = 1


@dataclass
class Scenario:
    name: str
    complex: SimplicialComplex
    phi: VertexFunction
    psi: VertexFunction
    H: GroupAction
    sample: GroupSample
    witness: Perm
    params: dict = field(default_factory=dict)
    coords: np.ndarray | None = None

    @property
    def fc_phi(self) -> FilteredComplex:
        return build_filtered_complex(self.complex, self.phi)

    @property
    def fc_psi(self) -> FilteredComplex:
        return build_filtered_complex(self.complex, self.psi)

    def files(self) -> dict[str, dict]:
        meta = {"scenario": self.name, "params": self.params, "generator_version": GENERATOR_VERSION}
        return {
            "complex.json": {**complex_to_json(self.complex, self.phi), "meta": meta},
            "phi.json": {"values": self.phi.values.tolist()},
            "psi.json": {"values": self.psi.values.tolist()},
            "group.json": group_to_json(self.H),
            "sample.json": {"elements": [list(g) for g in self.sample]},
            "witness.json": {"map": list(self.witness)},
        }

    def write(self, out: str | Path) -> list[Path]:
        out = Path(out)
        out.mkdir(parents=True, exist_ok=True)
        written = []
        for name, payload in self.files().items():
            path = out / name
            path.write_text(json.dumps(payload, sort_keys=True) + "\n", encoding="utf-8")
            written.append(path)
        return written


def cycle_complex(m: int) -> SimplicialComplex:
    return SimplicialComplex.from_cells(m, [(i, (i + 1) % m) for i in range(m)])


def rotation(m: int, step: int) -> Perm:
    return tuple((i + step) % m for i in range(m))


def _arc(length: int, low: float, peak: float) -> list[float]:
    if length <= 2:
        return [peak] * length
    mid = (low + peak) / 2
    return [mid] + [peak] * (length - 2) + [mid]


def _value_matching(src: np.ndarray, dst: np.ndarray) -> Perm:
    """Vertex bijection f with dst[x] == src[f(x)], pairing equal values in index order."""
    slots: dict[float, list[int]] = {}
    for i, val in enumerate(src):
        slots.setdefault(float(val), []).append(i)
    for val in slots:
        slots[val].reverse()
    return tuple(slots[float(val)].pop() for val in dst)


def gen_circle_rooms(n: int = 8) -> Scenario:
    """Rooms on a 2n-gon, antipodal symmetry, all 2n rotations as the sample.

    phi has its minimum on two antipodal vertex pairs.  psi visits the same
    minima and maxima in the same cyclic order, but one plateau vertex moves
    from the first long arc to the opposite one, so no two minimisers of psi
    are antipodal.
    """
    if not isinstance(n, int) or n < 8 or n % 2:
        raise ValueError(f"circle rooms need an even n >= 8, got {n!r}")
    m = 2 * n
    low, peak_long, peak_2, peak_4 = -2.0, -0.5, -1.0, 0.0
    short = max(1, n // 2 - 3)
    long_ = n - 2 - short

    def profile(l1: int, l3: int) -> np.ndarray:
        vals = [low] + _arc(l1, low, peak_long) + [low] + _arc(short, low, peak_2)
        vals += [low] + _arc(l3, low, peak_long) + [low] + _arc(short, low, peak_4)
        assert len(vals) == m
        return np.array(vals)

    phi = profile(long_, long_)
    psi = profile(long_ - 1, long_ + 1)
    witness = _value_matching(psi, phi)  # phi = psi o witness
    H = enumerate_group([rotation(m, n)])
    sample = GroupSample(tuple(rotation(m, j) for j in range(m)))
    return Scenario(
        "circle-rooms", cycle_complex(m), VertexFunction(phi), VertexFunction(psi), H, sample,
        witness, {"n": n},
    )


def _sphere_cells(rings: int, longitudes: int, offset: int) -> list[tuple[int, ...]]:
    L = longitudes
    levels = list(range(-(rings - 1), rings))
    south, north = offset, offset + 1 + len(levels) * L

    def vid(level: int, j: int) -> int:
        return offset + 1 + (level + rings - 1) * L + j % L

    cells = []
    for j in range(L):
        cells.append((south, vid(levels[0], j), vid(levels[0], j + 1)))
        cells.append((north, vid(levels[-1], j), vid(levels[-1], j + 1)))
    for a, b in zip(levels, levels[1:]):
        for j in range(L):
            # diagonals mirror across the equator so x3 -> -x3 is an automorphism
            if b <= 0:
                cells.append((vid(a, j), vid(a, j + 1), vid(b, j)))
                cells.append((vid(a, j + 1), vid(b, j + 1), vid(b, j)))
            else:
                cells.append((vid(a, j), vid(a, j + 1), vid(b, j + 1)))
                cells.append((vid(a, j), vid(b, j + 1), vid(b, j)))
    return cells


def _sphere_coords(rings: int, longitudes: int) -> np.ndarray:
    pts = [(0.0, 0.0, -1.0)]
    for level in range(-(rings - 1), rings):
        z = level / rings
        r = np.sqrt(1.0 - z * z)
        for j in range(longitudes):
            t = 2 * np.pi * j / longitudes
            pts.append((r * np.cos(t), r * np.sin(t), z))
    pts.append((0.0, 0.0, 1.0))
    return np.array(pts)


def gen_two_spheres(rings: int = 2, longitudes: int = 4) -> Scenario:
    """Two copies of S^2 (x4 = +1 and x4 = -1) swapped by the symmetry.

    ``rings`` latitude rings per closed hemisphere (equator included), at
    heights ``k / rings``; ``longitudes`` vertices per ring.  phi = x3 on both
    copies; psi = x3 on the first copy and -x3 on the second.
    """
    if not isinstance(rings, int) or rings < 2:
        raise ValueError(f"rings must be an integer >= 2, got {rings!r}")
    if not isinstance(longitudes, int) or longitudes < 3:
        raise ValueError(f"longitudes must be an integer >= 3, got {longitudes!r}")
    base = _sphere_coords(rings, longitudes)
    V = len(base)
    coords = np.vstack([np.c_[base, np.ones(V)], np.c_[base, -np.ones(V)]])
    cells = _sphere_cells(rings, longitudes, 0) + _sphere_cells(rings, longitudes, V)
    cx = SimplicialComplex.from_cells(2 * V, cells)

    z = np.array([round(x3 * rings) for x3 in base[:, 2]])
    heights = z / rings  # exact k / rings, poles at +-1
    phi = np.concatenate([heights, heights])
    psi = np.concatenate([heights, -heights])

    L = longitudes

    def on_sphere(level: int, j: int) -> int:
        if level == -rings:
            return 0
        if level == rings:
            return V - 1
        return 1 + (level + rings - 1) * L + j % L

    level_of = [int(x) for x in z]
    azimuth = [0] + [(i - 1) % L for i in range(1, V - 1)] + [0]

    def sphere_map(shift: int, flip: bool) -> list[int]:
        return [on_sphere(-lv if flip else lv, az + shift) for lv, az in zip(level_of, azimuth)]

    def both(m: list[int]) -> Perm:
        return tuple(m + [V + x for x in m])

    swap = tuple(list(range(V, 2 * V)) + list(range(V)))
    H = GroupAction((tuple(range(2 * V)), swap))
    sample = GroupSample(tuple(both(sphere_map(j, f)) for f in (False, True) for j in range(L)))
    witness = tuple(list(range(V)) + [V + x for x in sphere_map(0, True)])
    return Scenario(
        "two-spheres", cx, VertexFunction(phi), VertexFunction(psi), H, sample, witness,
        {"rings": rings, "longitudes": longitudes}, coords,
    )


def two_spheres_psi(coords: np.ndarray) -> np.ndarray:
    """psi on the ambient R^4: x3 where x4 > 0, -x3 where x4 < 0."""
    return np.where(coords[:, 3] > 0, coords[:, 2], -coords[:, 2])


def axis_rotation(axis: int, degrees: float) -> np.ndarray:
    t = np.deg2rad(degrees)
    c, s = np.cos(t), np.sin(t)
    i, j = [a for a in range(3) if a != axis]
    r = np.eye(3)
    r[i, i], r[i, j], r[j, i], r[j, j] = c, -s, s, c
    return r


def isometry_sample(step_degrees: int = 1) -> list[np.ndarray]:
    """Rotations about the three coordinate axes in fixed steps, each with and without x3 -> -x3."""
    flip = np.diag([1.0, 1.0, -1.0])
    mats = []
    for axis in range(3):
        for deg in range(0, 360, step_degrees):
            r = axis_rotation(axis, deg)
            mats.append(r)
            mats.append(r @ flip)
    return mats


def act_on_both(matrix: np.ndarray):
    """Isometry acting identically on both sphere copies (x4 untouched)."""

    def g(coords: np.ndarray) -> np.ndarray:
        out = coords.copy()
        out[:, :3] = coords[:, :3] @ matrix.T
        return out

    return g


def gen_random_instance(seed: int, max_vertices: int = 8, max_simplices: int = 30, max_dim: int = 2, k: int = 1):
    """Random closed complex with at most ``max_simplices`` simplices and dyadic values.

    Values are multiples of 1/4 in [0, 3], so ties between grades are common.
    """
    rng = np.random.default_rng(seed)
    nv = int(rng.integers(3, max_vertices + 1))
    cells: set[tuple[int, ...]] = set()
    count = nv
    for _ in range(60):
        size = int(rng.integers(2, max_dim + 2))
        cell = tuple(sorted(rng.choice(nv, size=min(size, nv), replace=False).tolist()))
        trial = SimplicialComplex.from_cells(nv, list(cells | {cell}))
        if len(trial) > max_simplices:
            continue
        cells.add(cell)
        count = len(trial)
        if count >= max_simplices - 2:
            break
    cx = SimplicialComplex.from_cells(nv, sorted(cells))
    values = rng.integers(0, 13, size=(nv, k)) / 4.0
    return cx, VertexFunction(values), GroupAction.trivial(nv)


def gen_doubled_instance(seed: int, max_vertices: int = 7, max_simplices: int = 24, max_dim: int = 2):
    """Two disjoint copies of a random complex, independent values, swap symmetry."""
    cx, f, _ = gen_random_instance(seed, max_vertices, max_simplices, max_dim)
    rng = np.random.default_rng([seed, 1])
    N = cx.vertex_count
    cells = [s for s in cx.top_cells()]
    cells += [tuple(v + N for v in s) for s in cells]
    doubled = SimplicialComplex.from_cells(2 * N, cells)
    values = np.concatenate([f.values, rng.integers(0, 13, size=(N, 1)) / 4.0])
    swap = tuple(list(range(N, 2 * N)) + list(range(N)))
    return doubled, VertexFunction(values), GroupAction((tuple(range(2 * N)), swap))


SCENARIOS = {
    "circle-rooms": gen_circle_rooms,
    "two-spheres": gen_two_spheres,
}

