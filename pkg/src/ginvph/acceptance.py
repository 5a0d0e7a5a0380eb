"""Acceptance checks, shared by ``ginvph verify`` and the test suite.

Each check returns a :class:`CheckOutcome`; an exception inside a check is
reported as a failure, never swallowed into a pass.
"""

from __future__ import annotations

import math
import time
import traceback
from dataclasses import dataclass

import numpy as np

from .complex_core import FieldSpec, barycentric_subdivide, build_filtered_complex
from .diagram_metrics import aggregate_bottleneck, bottleneck_distance
from .group_action import check_conjugation_closure, validate_action
from .oracles import brute_force_diagram, brute_force_pbnf, quotient_filtered
from .persistence import PersistenceDiagram, compute_persistence, pbnf_rank
from .pseudo_distance import classical_dHomeo_witness, dG_upper_bound, dG_upper_bound_isometric
from .scenarios import (
    act_on_both,
    gen_circle_rooms,
    gen_doubled_instance,
    gen_random_instance,
    gen_two_spheres,
    isometry_sample,
    two_spheres_psi,
)
from .symmetric_chains import apply_group_element, build_orbit_complex

GF3 = FieldSpec(3)


@dataclass
class CheckOutcome:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0


def diagram(fc, H=None, operator="max", field=2) -> PersistenceDiagram:
    return compute_persistence(build_orbit_complex(fc, H, operator, FieldSpec(field)))


def _oracle_matches(dgm: PersistenceDiagram, brute: dict) -> bool:
    return all(dgm.finite(n) == pairs and dgm.infinite(n) == ess for n, (pairs, ess) in brute.items())


def _scenarios():
    return [
        gen_circle_rooms(8),
        gen_circle_rooms(12),
        gen_two_spheres(2, 4),
        gen_two_spheres(4, 12),
    ]


def _label(sc) -> str:
    return f"{sc.name}{tuple(sc.params.values())}"


# -- 1 ---------------------------------------------------------------------

def check_two_spheres_degree_one():
    cases = [(2, 4), (3, 4), (2, 6), (4, 12)]
    for rings, L in cases:
        sc = gen_two_spheres(rings, L)
        for p in (2, 3):
            dphi = diagram(sc.fc_phi, sc.H, field=p)
            dpsi = diagram(sc.fc_psi, sc.H, field=p)
            if dpsi.finite(1) != [(0.0, 1.0)] or dpsi.infinite(1):
                return False, f"rings={rings} L={L} GF({p}): psi degree 1 = {dpsi.finite(1)} + ess {dpsi.infinite(1)}"
            if dphi.finite(1) or dphi.infinite(1):
                return False, f"rings={rings} L={L} GF({p}): phi degree 1 not empty"
            d = bottleneck_distance(dphi, dpsi, 1).distance
            if d != 0.5:
                return False, f"rings={rings} L={L} GF({p}): bottleneck {d} != 1/2"
    return True, f"psi: {{(0,1)}}, phi: empty, distance 1/2 exactly on {len(cases)} meshes x GF(2), GF(3)"


# -- 2 ---------------------------------------------------------------------

def check_two_spheres_sandwich():
    sc = gen_two_spheres(4, 12)
    dphi = diagram(sc.fc_phi, sc.H)
    dpsi = diagram(sc.fc_psi, sc.H)
    agg, _ = aggregate_bottleneck(dphi, dpsi, [0, 1])
    if agg != 1.0:
        return False, f"aggregate bottleneck {agg} != 1"
    if dphi.infinite(0) != [-1.0] or dpsi.infinite(0) != [0.0]:
        return False, f"degree-0 essential births {dphi.infinite(0)} vs {dpsi.infinite(0)}"
    transforms = [act_on_both(m) for m in isometry_sample(1)]
    bound = dG_upper_bound_isometric(sc.coords, sc.phi.values, two_spheres_psi, transforms)
    hi = math.sqrt(2) + 1e-9
    ok = 1.39 <= bound.value <= hi and agg <= bound.value
    return ok, (
        f"aggregate bottleneck = 1, essential births -1 vs 0; "
        f"d_G upper bound {bound.value:.6f} over {bound.sample_size} isometries, range [1.39, {hi:.10f}]"
    )


# -- 3 ---------------------------------------------------------------------

def _antipodal_level(values: np.ndarray, n: int) -> float:
    """min over x of max(f(x), f(x + n)); the level where the symmetric H0 class appears."""
    return min(max(values[x], values[(x + n) % (2 * n)]) for x in range(2 * n))


def _rho0_region(sc) -> int:
    """Grid points (u, v) where rho_0 of the symmetric phi equals 2, by brute force."""
    occ = build_orbit_complex(sc.fc_phi, sc.H)
    grid = np.arange(-2.5, 0.51, 0.125)
    hits = 0
    for i, u in enumerate(grid):
        for v in grid[i + 1:]:
            if brute_force_pbnf(occ, 0, u, v) == 2:
                hits += 1
    return hits


def check_circle_rooms():
    notes = []
    for n in (8, 12):
        sc = gen_circle_rooms(n)
        phi, psi = sc.phi.values[:, 0], sc.psi.values[:, 0]
        cphi, cpsi = diagram(sc.fc_phi), diagram(sc.fc_psi)
        classical, _ = aggregate_bottleneck(cphi, cpsi)
        wit = classical_dHomeo_witness(sc.fc_phi, sc.fc_psi, sc.witness)
        if not (cphi == cpsi and classical == 0.0 and wit == 0.0):
            return False, f"n={n}: classical diagrams differ (distance {classical}, witness {wit})"

        t0, tbar = _antipodal_level(phi, n), _antipodal_level(psi, n)
        sphi, spsi = diagram(sc.fc_phi, sc.H), diagram(sc.fc_psi, sc.H)
        if sphi.infinite(0) != [t0] or spsi.infinite(0) != [tbar]:
            return False, f"n={n}: essential births {sphi.infinite(0)}, {spsi.infinite(0)} vs oracle {t0}, {tbar}"
        if not t0 < tbar:
            return False, f"n={n}: t0={t0} not below tbar={tbar}"
        sym, _ = aggregate_bottleneck(sphi, spsi)
        gap = tbar - t0
        if not sym >= gap > 0:
            return False, f"n={n}: symmetric bottleneck {sym} < tbar - t0 = {gap}"
        bound = dG_upper_bound(sc.fc_phi, sc.fc_psi, sc.sample)
        if not gap <= bound.value:
            return False, f"n={n}: gap {gap} exceeds d_G bound {bound.value}"
        if not (sphi.finite(1) == spsi.finite(1) and sphi.infinite(1) == spsi.infinite(1)):
            return False, f"n={n}: symmetric degree-1 diagrams differ"
        notes.append(f"n={n}: t0={t0:g} tbar={tbar:g} d_B={sym:g} d_G<={bound.value:g}")
    hits = _rho0_region(gen_circle_rooms(8))
    if hits == 0:
        return False, "rho_0 of the symmetric phi never reaches 2 on the grid"
    notes.append(f"rho_0 = 2 on {hits} grid points")
    return True, "; ".join(notes)


# -- 4 ---------------------------------------------------------------------

def check_invariance():
    notes = []
    for sc in (gen_circle_rooms(12), gen_two_spheres(4, 12)):
        distinct = set()
        for fc in (sc.fc_phi, sc.fc_psi):
            base = diagram(fc, sc.H)
            for g in sc.sample:
                closed, _ = check_conjugation_closure(sc.H, [g])
                if not closed:
                    continue
                if diagram(apply_group_element(fc, g), sc.H) != base:
                    return False, f"{_label(sc)}: diagram changed under {list(g)}"
                distinct.add(tuple(g))
        if len(distinct) < 20:
            return False, f"{_label(sc)}: only {len(distinct)} admissible group elements"
        notes.append(f"{_label(sc)}: {len(distinct)} elements")
    return True, "exact equality for phi and psi; " + ", ".join(notes)


# -- 5 ---------------------------------------------------------------------

def _grid(occ, size=10) -> np.ndarray:
    lo = min(float(g.min()) for g in occ.grades if g.size)
    hi = max(float(g.max()) for g in occ.grades if g.size)
    return np.linspace(lo - 0.3, hi + 0.3, size)


def check_oracle_equivalence():
    points = 0
    for sc in _scenarios():
        for fc in (sc.fc_phi, sc.fc_psi):
            occ = build_orbit_complex(fc, sc.H)
            grid = _grid(occ)
            for u in grid:
                for v in grid:
                    if not u < v:
                        continue
                    for n in range(len(occ.basis)):
                        a = pbnf_rank(occ, n, u, v)
                        b = brute_force_pbnf(occ, n, u, v)
                        if a != b:
                            return False, f"{_label(sc)} n={n} u={u} v={v}: {a} vs oracle {b}"
                        points += 1
    for seed in range(200):
        cx, f, H = gen_random_instance(seed)
        fc = build_filtered_complex(cx, f)
        if not _oracle_matches(diagram(fc, H), brute_force_diagram(fc)):
            return False, f"random seed {seed}: diagram differs from the oracle"
    return True, f"{points} (n, u, v) grid queries over 4 scenarios x 2 functions; 200 random diagrams"


# -- 6 ---------------------------------------------------------------------

def check_quotient_equivalence():
    count = 0
    for sc in _scenarios():
        for fc in (sc.fc_phi, sc.fc_psi):
            if diagram(fc, sc.H) != diagram(quotient_filtered(fc, sc.H)):
                return False, f"{_label(sc)}: orbit and quotient diagrams differ"
            count += 1
    for seed in range(100):
        cx, f, H = gen_doubled_instance(seed)
        fc = build_filtered_complex(cx, f)
        if diagram(fc, H) != diagram(quotient_filtered(fc, H)):
            return False, f"doubled seed {seed}: orbit and quotient diagrams differ"
    return True, f"{count} scenario filtrations and 100 doubled instances"


# -- 7 ---------------------------------------------------------------------

def check_structure():
    built = 0
    cases = [(sc.fc_phi, sc.H) for sc in _scenarios()]
    for seed in range(50):
        cx, f, H = gen_doubled_instance(seed)
        cases.append((build_filtered_complex(cx, f), H))
    for fc, H in cases:
        for fld in (FieldSpec(2), GF3):
            occ = build_orbit_complex(fc, H, "max", fld)
            if not occ.check_boundary_squared(fld.p):
                return False, f"boundary squared nonzero over GF({fld.p})"
            if occ.check_monotone():
                return False, "grade not monotone along a boundary"
            built += 1
    for seed in range(50):
        cx, f, H = gen_random_instance(seed)
        fc = build_filtered_complex(cx, f)
        sub, _ = barycentric_subdivide(fc)
        if diagram(fc) != diagram(sub):
            return False, f"seed {seed}: subdivision changed the diagram"
    return True, f"{built} orbit complexes checked over GF(2), GF(3); 50 subdivisions"


# -- 8 ---------------------------------------------------------------------

def check_perturbation():
    rng = np.random.default_rng(20261016)
    worst = -np.inf
    for sc in (gen_circle_rooms(8), gen_two_spheres(2, 4)):
        for trial in range(100):
            fc = sc.fc_phi if trial % 2 == 0 else sc.fc_psi
            scale = rng.choice([1e-3, 0.1, 0.5, 2.0])
            delta = rng.uniform(-scale, scale, size=fc.values.shape)
            moved = build_filtered_complex(fc.complex, fc.values + delta)
            agg, _ = aggregate_bottleneck(diagram(fc, sc.H), diagram(moved, sc.H))
            norm = float(np.abs(delta).max())
            if agg > norm + 1e-12:
                return False, f"{_label(sc)} trial {trial}: bottleneck {agg} > |delta| {norm}"
            worst = max(worst, agg - norm)
    return True, f"200 perturbations; max(d_B - |delta|) = {worst:.3g}"


# -- 9 ---------------------------------------------------------------------

def check_contraction():
    rng = np.random.default_rng(9)
    scs = [gen_circle_rooms(8), gen_two_spheres(2, 4)]
    for trial in range(100):
        sc = scs[trial % 2]
        N = sc.complex.vertex_count
        f1 = rng.integers(-32, 33, size=(N, 1)) / 8.0
        f2 = f1 + rng.integers(-8, 9, size=(N, 1)) / 8.0
        bound = float(np.abs(f1 - f2).max())
        for op in ("max", "mean"):
            a = build_orbit_complex(build_filtered_complex(sc.complex, f1), sc.H, op)
            b = build_orbit_complex(build_filtered_complex(sc.complex, f2), sc.H, op)
            diff = max(float(np.abs(x - y).max()) for x, y in zip(a.grades, b.grades) if x.size)
            if diff > bound:
                return False, f"trial {trial} operator {op}: grade change {diff} > {bound}"
    return True, "100 dyadic pairs, max and mean operators, exact comparison"


def check_actions_valid():
    for sc in _scenarios():
        rep = validate_action(sc.complex, sc.H)
        if not rep.ok:
            return False, f"{_label(sc)}: {rep.summary()}"
        closed, bad = check_conjugation_closure(sc.H, sc.sample)
        if not closed:
            return False, f"{_label(sc)}: sample not conjugation closed at {bad}"
    return True, "all scenario actions free, regular, conjugation closed"


CHECKS = [
    ("1 two-spheres degree-1 diagram", check_two_spheres_degree_one),
    ("2 two-spheres stability sandwich", check_two_spheres_sandwich),
    ("3 circle-rooms separation", check_circle_rooms),
    ("4 invariance under the sample", check_invariance),
    ("5 oracle equivalence", check_oracle_equivalence),
    ("6 quotient equivalence", check_quotient_equivalence),
    ("7 structural invariants", check_structure),
    ("8 perturbation stability", check_perturbation),
    ("9 operator contraction", check_contraction),
    ("scenario actions valid", check_actions_valid),
]


def run_check(name: str, fn) -> CheckOutcome:
    start = time.perf_counter()
    try:
        passed, detail = fn()
    except Exception as exc:  # a crash is a failure, with the reason shown
        passed = False
        detail = f"{type(exc).__name__}: {exc} @ {traceback.extract_tb(exc.__traceback__)[-1].lineno}"
    return CheckOutcome(name, bool(passed), detail, time.perf_counter() - start)


def run_all() -> list[CheckOutcome]:
    return [run_check(name, fn) for name, fn in CHECKS]
