import json

import numpy as np
import pytest

from ginvph.complex_core import (
    FieldSpec,
    SimplicialComplex,
    VertexFunction,
    barycentric_subdivide,
    build_filtered_complex,
    closure,
    complex_from_json,
    complex_to_json,
    subdivide_permutation,
    sublevel_complex,
    values_from_json,
)
from ginvph.group_action import is_automorphism
from ginvph.scenarios import cycle_complex, gen_random_instance, rotation


def test_field_spec():
    assert FieldSpec(3).inverse(2) == 2
    assert FieldSpec(65521).p == 65521
    for bad in (1, 4, 65537, 2.0):
        with pytest.raises(ValueError):
            FieldSpec(bad)
    with pytest.raises(ZeroDivisionError):
        FieldSpec(5).inverse(10)


def test_closure_and_counts():
    layers = closure([(2, 0, 1)])
    assert layers == [[(0,), (1,), (2,)], [(0, 1), (0, 2), (1, 2)], [(0, 1, 2)]]
    cx = SimplicialComplex.from_cells(4, [(0, 1, 2)])
    assert len(cx) == 8  # isolated vertex 3 included
    assert (3,) in cx and (0, 3) not in cx
    assert cx.top_cells() == [(3,), (0, 1, 2)]


@pytest.mark.parametrize(
    "layers, msg",
    [
        ([[(0,), (1,)], [(0, 1), (0, 1)]], "duplicate"),
        ([[(0,), (1,)], [(1, 0)]], "ascending"),
        ([[(0,), (1,)], [(0, 2)]], "outside"),
        ([[(0,), (1,), (2,)], [(0, 1)], [(0, 1, 2)]], "missing"),
        ([[(0,), (0, 1)]], "dimension"),
    ],
)
def test_complex_validation(layers, msg):
    with pytest.raises(ValueError, match=msg):
        SimplicialComplex(3 if msg != "outside" else 2, layers)


def test_repeated_vertex_rejected():
    with pytest.raises(ValueError, match="repeats"):
        closure([(0, 0, 1)])


def test_vertex_function_checks():
    f = VertexFunction([1.0, -0.0, 2.0])
    assert f.values.shape == (3, 1) and f.k == 1
    assert not np.signbit(f.values).any()
    with pytest.raises(ValueError, match="non-finite"):
        VertexFunction([0.0, np.inf])
    with pytest.raises(ValueError):
        VertexFunction(np.zeros((2, 2, 2)))


def test_lower_star_grades():
    cx = SimplicialComplex.from_cells(3, [(0, 1, 2)])
    fc = build_filtered_complex(cx, [[0.0, 2.0], [1.0, 0.0], [0.5, 0.5]])
    assert fc.k == 2
    assert fc.grade((0, 1)).tolist() == [1.0, 2.0]
    assert fc.grade((0, 1, 2)).tolist() == [1.0, 2.0]
    with pytest.raises(ValueError, match="vertices"):
        build_filtered_complex(cx, [0.0, 1.0])


def test_sublevel_complex_is_closed_and_nested():
    cx, f, _ = gen_random_instance(3)
    fc = build_filtered_complex(cx, f)
    prev = set()
    for u in np.arange(0, 3.25, 0.25):
        sub = sublevel_complex(fc, u)  # constructor re-checks closure
        cur = set(sub)
        assert prev <= cur
        prev = cur
    assert prev == set(cx)
    with pytest.raises(ValueError):
        sublevel_complex(fc, np.inf)


def test_subdivision_structure():
    cx = cycle_complex(5)
    fc = build_filtered_complex(cx, np.arange(5.0))
    sub, bary = barycentric_subdivide(fc)
    assert sub.complex.vertex_count == len(cx)
    assert len(sub.complex.layer(1)) == 2 * len(cx.layer(1))
    # barycenters carry the simplex grade; old vertices keep index and value
    assert sub.values[:5, 0].tolist() == list(range(5))
    for i, s in enumerate(bary):
        assert sub.values[i, 0] == fc.grade(s)[0]
    g = subdivide_permutation(bary, rotation(5, 2))
    assert is_automorphism(sub.complex, g)


def test_json_round_trip_and_errors():
    cx, f, _ = gen_random_instance(7)
    data = json.loads(json.dumps(complex_to_json(cx, f)))
    cx2, f2 = complex_from_json(data)
    assert cx2 == cx and np.array_equal(f2.values, f.values)
    assert values_from_json({"values": [1, 2]}).values.shape == (2, 1)
    for bad, msg in [
        ([], "object"),
        ({}, "vertices"),
        ({"vertices": -1}, "non-negative"),
        ({"vertices": 2, "simplices": [[0, "a"]]}, r"simplices\[0\]"),
        ({"vertices": 2, "simplices": [0, 1]}, "list of vertex lists"),
    ]:
        with pytest.raises(ValueError, match=msg):
            complex_from_json(bad)
    with pytest.raises(ValueError, match="values"):
        values_from_json({"vals": []})
