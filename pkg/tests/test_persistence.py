import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ginvph import PersistenceDiagram, build_filtered_complex, build_orbit_complex, compute_persistence, pbnf_rank
from ginvph.oracles import brute_force_diagram, brute_force_pbnf
from ginvph.scenarios import cycle_complex, gen_doubled_instance, gen_random_instance


def _matches(dgm, brute):
    return all(dgm.finite(n) == pairs and dgm.infinite(n) == ess for n, (pairs, ess) in brute.items())


def test_circle_diagram():
    # two minima at 0, maxima 2 and 3: one H0 pair (0, 2), essential H0 at 0 and H1 at 3
    fc = build_filtered_complex(cycle_complex(4), [0.0, 2.0, 0.0, 3.0])
    d = compute_persistence(build_orbit_complex(fc))
    assert d.finite(0) == [(0.0, 2.0)]
    assert d.infinite(0) == [0.0]
    assert d.finite(1) == [] and d.infinite(1) == [3.0]
    assert d.meta["tiebreak"] and d.meta["field"] == 2


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_matches_oracle_random(seed):
    cx, f, H = gen_random_instance(seed)
    fc = build_filtered_complex(cx, f)
    for p in (2, 3):
        assert _matches(compute_persistence(build_orbit_complex(fc, H, field=p)), brute_force_diagram(fc, p))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_orbit_complex_matches_oracle(seed):
    cx, f, H = gen_doubled_instance(seed)
    occ = build_orbit_complex(build_filtered_complex(cx, f), H)
    assert _matches(compute_persistence(occ), brute_force_diagram(occ))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 12), st.integers(1, 12))
def test_pbnf_agrees_with_diagram_and_oracle(seed, i, step):
    cx, f, H = gen_random_instance(seed)
    occ = build_orbit_complex(build_filtered_complex(cx, f), H)
    d = compute_persistence(occ)
    u, v = i / 4 + 0.1, (i + step) / 4 + 0.1
    for n in range(len(occ.basis)):
        r = pbnf_rank(occ, n, u, v)
        assert r == d.count(n, u, v) == brute_force_pbnf(occ, n, u, v)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_pbnf_vector_grades(seed):
    cx, f, H = gen_random_instance(seed, k=2)
    occ = build_orbit_complex(build_filtered_complex(cx, f), H)
    rng = np.random.default_rng(seed)
    for _ in range(5):
        u = rng.integers(0, 12, size=2) / 4 + 0.05
        v = u + rng.integers(1, 6, size=2) / 4
        for n in range(len(occ.basis)):
            assert pbnf_rank(occ, n, u, v) == brute_force_pbnf(occ, n, u, v)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_pbnf_monotone(seed):
    cx, f, H = gen_random_instance(seed)
    occ = build_orbit_complex(build_filtered_complex(cx, f), H)
    ts = np.arange(-0.5, 3.6, 0.5)
    for n in range(len(occ.basis)):
        R = {(a, b): pbnf_rank(occ, n, a, b) for a in ts for b in ts if a < b}
        for (a, b), r in R.items():
            # nondecreasing in u, nonincreasing in v
            if (a + 0.5, b) in R:
                assert r <= R[(a + 0.5, b)]
            if (a, b + 0.5) in R:
                assert r >= R[(a, b + 0.5)]


def test_pbnf_edge_cases():
    fc = build_filtered_complex(cycle_complex(4), [0.0, 1.0, 2.0, 3.0])
    occ = build_orbit_complex(fc)
    assert pbnf_rank(occ, 0, -5, -4) == 0  # empty sublevel
    assert pbnf_rank(occ, 1, 10, 11) == 1  # plain Betti number
    assert pbnf_rank(occ, 5, 0, 1) == 0
    with pytest.raises(ValueError, match="strictly"):
        pbnf_rank(occ, 0, 1.0, 1.0)


def test_diagram_serialisation():
    fc = build_filtered_complex(cycle_complex(4), [0.0, 2.0, 0.0, 3.0])
    d = compute_persistence(build_orbit_complex(fc))
    again = PersistenceDiagram.from_json(d.to_json())
    assert again == d
    rows = d.to_csv().splitlines()
    assert rows[0] == "degree,birth,death"
    assert "1,3,inf" in rows
    for bad in ([], {"deg0": {}}, {"degree_x": {}}, {"degree_0": {"pairs": [[1]]}}):
        with pytest.raises(ValueError):
            PersistenceDiagram.from_json(bad)
    with pytest.raises(ValueError, match="birth"):
        PersistenceDiagram({0: [(2.0, 1.0)]})


def test_fields_agree_on_torsion_free_example():
    cx, f, H = gen_doubled_instance(11)
    fc = build_filtered_complex(cx, f)
    assert compute_persistence(build_orbit_complex(fc, H, field=2)) == compute_persistence(
        build_orbit_complex(fc, H, field=3)
    )
