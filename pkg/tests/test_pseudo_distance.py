import math

import numpy as np
import pytest

from ginvph import build_filtered_complex, classical_dHomeo_witness, dG_upper_bound
from ginvph.group_action import inverse
from ginvph.pseudo_distance import dG_upper_bound_isometric
from ginvph.scenarios import (
    act_on_both,
    axis_rotation,
    cycle_complex,
    gen_circle_rooms,
    gen_two_spheres,
    rotation,
    two_spheres_psi,
)


def test_bound_is_zero_when_witness_sampled():
    fc = build_filtered_complex(cycle_complex(6), [0.0, 1.0, 3.0, 2.0, 5.0, 4.0])
    g = rotation(6, 2)
    moved = build_filtered_complex(fc.complex, fc.values[np.array(g)])  # phi o g
    sample = [rotation(6, j) for j in range(6)]
    res = dG_upper_bound(fc, moved, sample)
    assert res.value == 0.0
    assert res.argmin == inverse(g)
    assert res.sample_size == 6


def test_first_minimiser_wins_ties():
    fc = build_filtered_complex(cycle_complex(4), np.zeros(4))
    res = dG_upper_bound(fc, fc, [rotation(4, j) for j in (1, 2, 3)])
    assert res.argmin_index == 0


def test_errors():
    fc = build_filtered_complex(cycle_complex(4), np.zeros(4))
    with pytest.raises(ValueError, match="automorphism"):
        dG_upper_bound(fc, fc, [(1, 0, 2, 3)])
    with pytest.raises(ValueError):
        dG_upper_bound(fc, fc, [])
    with pytest.raises(ValueError):
        classical_dHomeo_witness(fc, fc, [0, 1, 2])


def test_scenario_witnesses_certify_zero():
    for sc in (gen_circle_rooms(8), gen_circle_rooms(10), gen_two_spheres(3, 5)):
        assert classical_dHomeo_witness(sc.fc_phi, sc.fc_psi, sc.witness) == 0.0


def test_two_spheres_sample_bounds():
    sc = gen_two_spheres(2, 4)
    # the permutation sample sees only azimuth shifts and the flip: bound 2 (or 1 with flip)
    assert dG_upper_bound(sc.fc_phi, sc.fc_psi, sc.sample).value == 2.0
    quarter = act_on_both(axis_rotation(0, 90))
    res = dG_upper_bound_isometric(sc.coords, sc.phi.values, two_spheres_psi, [quarter])
    assert 1.0 <= res.value <= math.sqrt(2) + 1e-9
    ident = dG_upper_bound_isometric(sc.coords, sc.phi.values, two_spheres_psi, [act_on_both(np.eye(3))])
    assert ident.value == 2.0
