import math

from hypothesis import given, settings, strategies as st

from ginvph import PersistenceDiagram, aggregate_bottleneck, bottleneck_distance, verify_stability
from helpers import brute_bottleneck

quarter = st.integers(0, 16).map(lambda x: x / 4)


@st.composite
def finite_points(draw, max_size=3):
    pts = []
    for _ in range(draw(st.integers(0, max_size))):
        b = draw(quarter)
        pts.append((b, b + draw(st.integers(1, 8)) / 4))
    return pts


def dgm(pts, ess=()):
    return PersistenceDiagram({0: pts}, {0: list(ess)})


@settings(max_examples=150, deadline=None)
@given(finite_points(), finite_points())
def test_matches_exhaustive_search(A, B):
    res = bottleneck_distance(dgm(A), dgm(B), 0)
    assert res.distance == brute_bottleneck(A, B)
    assert res.witness_cost() == res.distance


@settings(max_examples=100, deadline=None)
@given(finite_points(4), finite_points(4), finite_points(4))
def test_metric_axioms(A, B, C):
    a, b, c = dgm(A), dgm(B), dgm(C)
    dab = bottleneck_distance(a, b, 0).distance
    assert bottleneck_distance(a, a, 0).distance == 0
    assert dab == bottleneck_distance(b, a, 0).distance
    assert dab <= bottleneck_distance(a, c, 0).distance + bottleneck_distance(c, b, 0).distance + 1e-12


@settings(max_examples=60, deadline=None)
@given(finite_points(4), finite_points(4))
def test_witness_is_a_partial_matching(A, B):
    res = bottleneck_distance(dgm(A), dgm(B), 0)
    left = sorted(a for a, _ in res.witness if a is not None)
    right = sorted(b for _, b in res.witness if b is not None)
    assert left == sorted(A) and right == sorted(B)


def test_essential_classes():
    d1 = dgm([], [0.0, 5.0])
    d2 = dgm([(1.0, 2.0)], [1.0, 4.0])
    res = bottleneck_distance(d1, d2, 0)
    assert res.distance == 1.0
    assert res.witness_cost() == 1.0
    inf = bottleneck_distance(d1, dgm([], [0.0]), 0)
    assert math.isinf(inf.distance)
    assert inf.to_json()["distance"] == "inf"


def test_aggregate_and_stability():
    d1 = PersistenceDiagram({0: [(0.0, 1.0)], 1: []}, {0: [0.0]})
    d2 = PersistenceDiagram({0: [], 1: [(0.0, 3.0)]}, {0: [0.0]})
    agg, per = aggregate_bottleneck(d1, d2)
    assert per[0].distance == 0.5 and per[1].distance == 1.5 and agg == 1.5
    assert verify_stability(d1, d2, 1.5)
    assert not verify_stability(d1, d2, 1.0)
    assert aggregate_bottleneck(d1, d2, [0])[0] == 0.5


def test_to_json_marks_diagonal():
    res = bottleneck_distance(dgm([(0.0, 2.0)]), dgm([]), 0)
    assert res.distance == 1.0
    assert res.to_json()["witness"] == [[[0.0, 2.0], "diagonal"]]
