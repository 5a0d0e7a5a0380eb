import numpy as np
import pytest

from ginvph import GroupAction, build_filtered_complex, build_orbit_complex, compute_persistence
from ginvph.complex_core import FieldSpec
from ginvph.group_action import enumerate_group
from ginvph.scenarios import cycle_complex, gen_doubled_instance, gen_two_spheres, rotation
from ginvph.symmetric_chains import NonFreeActionError, apply_group_element, sort_sign
from helpers import octahedron


def test_sort_sign():
    assert sort_sign((0, 1, 2)) == 1
    assert sort_sign((1, 0, 2)) == -1
    assert sort_sign((2, 0, 1)) == 1


def test_orbit_counts_and_representatives():
    fc = build_filtered_complex(cycle_complex(8), np.arange(8.0))
    occ = build_orbit_complex(fc, enumerate_group([rotation(8, 4)]))
    assert [occ.size(n) for n in range(2)] == [4, 4]
    for elems in occ.basis:
        for e in elems:
            assert e.representative == min(s for s, _ in e.members)
            assert len(e.members) == 2
    # orbit {0, 4} gets the max of its members' values
    assert occ.grades[0][0, 0] == 4.0


def test_trivial_group_is_the_simplicial_complex():
    cx, f, _ = gen_doubled_instance(4)
    fc = build_filtered_complex(cx, f)
    occ = build_orbit_complex(fc)
    assert occ.group_order == 1
    assert [occ.size(n) for n in range(len(occ.basis))] == [len(cx.layer(n)) for n in range(cx.dimension + 1)]


def test_non_free_action_rejected():
    fc = build_filtered_complex(cycle_complex(8), np.zeros(8))
    refl = tuple((-i) % 8 for i in range(8))
    with pytest.raises(NonFreeActionError, match="fixes"):
        build_orbit_complex(fc, GroupAction((tuple(range(8)), refl)))


def test_non_automorphism_rejected():
    fc = build_filtered_complex(cycle_complex(4), np.zeros(4))
    with pytest.raises(ValueError, match="does not map"):
        build_orbit_complex(fc, GroupAction(((0, 1, 2, 3), (1, 0, 2, 3))))


def test_projective_plane_signs():
    # antipodal quotient of the octahedron is RP^2: H1 = Z/2, seen over GF(2) but not GF(3)
    cx, anti = octahedron()
    fc = build_filtered_complex(cx, np.zeros(6))
    betti = {}
    for p in (2, 3):
        occ = build_orbit_complex(fc, anti, field=FieldSpec(p))
        assert occ.check_boundary_squared(p)
        d = compute_persistence(occ)
        betti[p] = [len(d.infinite(n)) for n in range(3)]
    assert betti[2] == [1, 1, 1]
    assert betti[3] == [1, 0, 0]
    # over the integers the top orbit boundary has even coefficients
    occ = build_orbit_complex(fc, anti)
    assert occ.check_boundary_squared()


def test_mean_operator():
    fc = build_filtered_complex(cycle_complex(8), np.arange(8.0))
    H = enumerate_group([rotation(8, 4)])
    occ = build_orbit_complex(fc, H, "mean")
    assert occ.grades[0][:, 0].tolist() == [2.0, 3.0, 4.0, 5.0]
    assert occ.check_monotone() == []
    with pytest.raises(ValueError, match="operator"):
        build_orbit_complex(fc, H, "median")


def test_vector_grades():
    cx = cycle_complex(6)
    vals = np.c_[np.arange(6.0), np.arange(6.0)[::-1]]
    occ = build_orbit_complex(build_filtered_complex(cx, vals), enumerate_group([rotation(6, 3)]))
    assert occ.k == 2
    assert occ.grades[0].tolist() == [[3.0, 5.0], [4.0, 4.0], [5.0, 3.0]]
    with pytest.raises(ValueError, match="scalar"):
        compute_persistence(occ)


def test_triplets_and_dense_boundary():
    sc = gen_two_spheres(2, 4)
    occ = build_orbit_complex(sc.fc_phi, sc.H, field=FieldSpec(3))
    D = occ.boundary_dense(2, 3)
    assert D.shape == (occ.size(1), occ.size(2))
    lines = occ.to_triplets(2, 3).strip().splitlines()
    assert lines[0].startswith("#")
    assert len(lines) - 1 == np.count_nonzero(D)
    i, j, c = map(int, lines[1].split())
    assert D[i, j] == c


def test_apply_group_element():
    fc = build_filtered_complex(cycle_complex(6), np.arange(6.0))
    moved = apply_group_element(fc, rotation(6, 1))
    assert moved.values[:, 0].tolist() == [1, 2, 3, 4, 5, 0]
    with pytest.raises(ValueError):
        apply_group_element(fc, (1, 0, 2, 3, 4, 5))
