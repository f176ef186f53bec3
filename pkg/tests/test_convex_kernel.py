import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from symconvex.convex_kernel import (
    Verdict, all_local_cones, build_model, distance_to_cone, distance_to_hull_plus_cone,
    dominant_vertex, is_proper_cone, local_cone_at, membership_intersection,
    membership_minkowski, positive_cone,
)

from conftest import datum


def model_for(args, X, tol=1e-8):
    return build_model(datum(*args), np.asarray(X, float), tol)


# ---------------------------------------------------------------- model


def test_compact2_model():
    m = model_for(("compact", 2), [0.7])
    assert sorted(m.vertices.ravel()) == pytest.approx([-0.7, 0.7])
    assert m.cone_gens.shape == (0, 1)


def test_split2_model():
    m = model_for(("split", 2), [1.3])
    assert m.vertices.tolist() == [[1.3]]
    assert m.cone_gens == pytest.approx(np.array([[-0.5]]), abs=1e-12)


def test_origin_collapses_orbit():
    m = model_for(("compact", 3), [0.0, 0.0])
    assert m.vertices.shape == (1, 2)


def test_wall_point_merges_vertices():
    # x1 = x2 is fixed by the transposition, leaving 3 of 6 vertices
    m = model_for(("compact", 3), [1.0, 1.0])
    assert len(m.vertices) == 3


def test_model_rejects_wrong_dimension():
    with pytest.raises(ValueError):
        model_for(("compact", 3), [1.0])


def test_vertices_closed_under_weyl():
    d = datum("compact", 4)
    m = build_model(d, np.array([3.0, 1.5, -0.5]))
    for W in d.weyl_elements:
        moved = m.vertices @ W.T
        for v in moved:
            assert np.abs(m.vertices - v).max(axis=1).min() < 1e-12


@pytest.mark.parametrize("args", [("split", 2), ("split", 3), ("split", 4), ("supq", 3, 2, 1), ("supq", 4, 2, 2)])
def test_recession_cone_is_proper(args):
    d = datum(*args)
    m = build_model(d, np.ones(d.rank))
    assert len(m.cone_gens) > 0
    assert is_proper_cone(m.cone_gens)


# ---------------------------------------------------------------- Minkowski oracle


def test_vertices_inside_with_indicator_weights():
    m = model_for(("compact", 3), [2.0, 1.0])
    for i, v in enumerate(m.vertices):
        res = membership_minkowski(v, m)
        assert res.verdict is Verdict.INSIDE and res.inside
        assert res.weights @ m.vertices == pytest.approx(v, abs=1e-10)


def test_recession_direction_inside():
    m = model_for(("supq", 3, 2, 1), [2.0, 1.0])
    for g in m.cone_gens:
        assert membership_minkowski(m.base_point + 10 * g, m).inside


def test_compact2_just_outside_has_unit_separator():
    m = model_for(("compact", 2), [1.0])
    res = membership_minkowski(np.array([1.001]), m)
    assert res.verdict is Verdict.OUTSIDE
    assert res.slack == pytest.approx(1e-3, rel=1e-6)
    assert res.separator == pytest.approx([1.0])


def test_boundary_band():
    m = model_for(("compact", 2), [1.0])
    assert membership_minkowski(np.array([1 + 5e-8]), m).verdict is Verdict.BOUNDARY
    assert membership_minkowski(np.array([1 + 5e-9]), m).verdict is Verdict.INSIDE


def test_split2_is_half_line():
    m = model_for(("split", 2), [1.0])
    assert membership_minkowski(np.array([-50.0]), m).inside
    assert not membership_minkowski(np.array([1.1]), m).inside


def test_separator_certificate():
    m = model_for(("supq", 3, 2, 1), [2.0, 1.0])
    y = np.array([3.0, 3.0])
    res = membership_minkowski(y, m)
    assert res.verdict is Verdict.OUTSIDE
    phi = res.separator
    assert phi @ y - max(m.vertices @ phi) == pytest.approx(res.slack, rel=1e-8)
    assert np.all(m.cone_gens @ phi <= 1e-12)
    assert np.abs(phi).max() <= 1 + 1e-12


def test_distance_matches_scipy_lp(rng):
    from scipy.optimize import linprog
    m = model_for(("supq", 4, 2, 2), [2.0, 1.0, -0.5])
    V, G = m.vertices, m.cone_gens
    k, r = V.shape
    for _ in range(20):
        y = rng.normal(0, 3, r)
        d, *_ = distance_to_hull_plus_cone(y, V, G)
        A = np.vstack([np.hstack([V.T, G.T, np.eye(r), -np.eye(r)]),
                       np.concatenate([np.ones(k), np.zeros(len(G) + 2 * r)])])
        c = np.concatenate([np.zeros(k + len(G)), np.ones(2 * r)])
        ref = linprog(c, A_eq=A, b_eq=np.append(y, 1), bounds=(0, None), method="highs")
        assert d == pytest.approx(ref.fun, abs=1e-9)


# ---------------------------------------------------------------- cones


def test_is_proper_cone():
    assert not is_proper_cone([[1.0, 0.0], [-1.0, 0.0]])
    assert is_proper_cone([[1.0, 0.0], [0.0, 1.0]])
    assert is_proper_cone(np.zeros((0, 2)))
    assert not is_proper_cone([[1.0, 0.0], [0.0, 1.0], [-1.0, -1.0]])


@pytest.mark.parametrize("args", [("compact", 3), ("compact", 4), ("split", 3), ("supq", 3, 2, 1), ("supq", 4, 2, 2)])
def test_positive_cone_is_proper(args):
    assert is_proper_cone(positive_cone(datum(*args)))


def test_distance_to_cone():
    d, mu = distance_to_cone(np.array([1.0, 2.0]), [[1.0, 0.0], [0.0, 1.0]])
    assert d == pytest.approx(0.0, abs=1e-12) and mu == pytest.approx([1.0, 2.0])
    d, _ = distance_to_cone(np.array([-1.0, 2.0]), [[1.0, 0.0], [0.0, 1.0]])
    assert d == pytest.approx(1.0)
    d, _ = distance_to_cone(np.array([-1.0, 2.0]), np.zeros((0, 2)))
    assert d == pytest.approx(3.0)


def test_dominant_local_cone_lies_in_minus_positive_cone():
    d = datum("compact", 3)
    m = build_model(d, np.array([2.0, 1.0]))
    w = next(i for i, W in enumerate(d.weyl_elements)
             if all(r(W @ m.base_point) > 0 for r in d.positive_roots))
    lc = local_cone_at(m, d, w)
    assert len(lc.generators) == 3
    gplus = positive_cone(d)
    for g in lc.generators:
        assert distance_to_cone(g, gplus)[0] < 1e-12


def test_split2_local_cone():
    d = datum("split", 2)
    m = build_model(d, np.array([1.0]))
    assert local_cone_at(m, d, 0).generators == pytest.approx(np.array([[-0.5]]), abs=1e-12)


def test_zero_root_value_drops_plus_generator():
    d = datum("compact", 3)
    m = build_model(d, np.array([1.0, 1.0]))   # beta = e1 - e2 vanishes
    lc = local_cone_at(m, d, 0)
    assert len(lc.generators) == 2


def test_intersection_compact2_fails_only_right_cone():
    d = datum("compact", 2)
    m = build_model(d, np.array([1.0]))
    cones = all_local_cones(m, d)
    res = membership_intersection(np.array([1.001]), cones)
    assert res.verdict is Verdict.OUTSIDE
    assert [cones[i].apex.tolist() for i in res.failing] == [[1.0]]


def test_intersection_accepts_vertices():
    d = datum("supq", 4, 2, 2)
    m = build_model(d, np.array([2.0, 1.0, -0.5]))
    cones = [c for c in all_local_cones(m, d) if is_proper_cone(c.generators)]
    for v in m.vertices:
        assert membership_intersection(v, cones).inside


def test_dominant_vertex_is_plus_dominant():
    for args, X in [(("compact", 3), [-3.0, 1.0]), (("supq", 3, 2, 1), [1.0, 2.0])]:
        d = datum(*args)
        m = build_model(d, np.array(X))
        v = dominant_vertex(m, d)
        assert all(r(v) >= -1e-12 for r in d.positive_roots if r.mult_plus > 0)


# ---------------------------------------------------------------- properties

PRESETS_2D = [("compact", 3), ("supq", 3, 2, 1)]
coord = st.floats(-4, 4, allow_nan=False)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(PRESETS_2D), st.tuples(coord, coord), st.tuples(coord, coord))
def test_oracles_agree_off_band(args, X, y):
    d = datum(*args)
    m = build_model(d, np.array(X))
    cones = [c for c in all_local_cones(m, d) if is_proper_cone(c.generators)]
    a = membership_minkowski(np.array(y), m)
    b = membership_intersection(np.array(y), cones)
    assume(Verdict.BOUNDARY not in (a.verdict, b.verdict))
    assert a.verdict == b.verdict


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(PRESETS_2D + [("split", 4), ("compact", 4)]), st.data())
def test_convex_combinations_are_inside(args, data):
    d = datum(*args)
    X = np.array(data.draw(st.lists(coord, min_size=d.rank, max_size=d.rank)))
    m = build_model(d, X)
    lam = np.array(data.draw(st.lists(st.floats(0, 1), min_size=len(m.vertices), max_size=len(m.vertices))))
    assume(lam.sum() > 1e-3)
    mu = np.array(data.draw(st.lists(st.floats(0, 5), min_size=len(m.cone_gens), max_size=len(m.cone_gens))))
    y = (lam / lam.sum()) @ m.vertices + (mu @ m.cone_gens if len(mu) else 0)
    res = membership_minkowski(y, m)
    assert res.verdict is not Verdict.OUTSIDE
    # certificate reconstructs y
    rec = res.weights @ m.vertices + (res.cone_weights @ m.cone_gens if len(m.cone_gens) else 0)
    assert np.abs(rec - y).max() < 1e-8 * max(1, np.abs(y).max())


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(PRESETS_2D), st.tuples(coord, coord), st.tuples(coord, coord))
def test_inside_points_in_global_cone(args, X, y):
    d = datum(*args)
    m = build_model(d, np.array(X))
    if membership_minkowski(np.array(y), m).inside:
        dist, _ = distance_to_cone(np.array(y) - dominant_vertex(m, d), positive_cone(d))
        assert dist < 1e-7


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(PRESETS_2D), st.tuples(coord, coord), st.tuples(coord, coord))
def test_membership_is_weyl_invariant(args, X, y):
    d = datum(*args)
    m = build_model(d, np.array(X))
    y = np.array(y)
    base = membership_minkowski(y, m)
    assume(base.verdict is not Verdict.BOUNDARY)
    # the cone part is only W-stable for compact presets
    if len(m.cone_gens) == 0:
        for W in d.weyl_elements:
            other = membership_minkowski(W @ y, m)
            assume(other.verdict is not Verdict.BOUNDARY)
            assert other.verdict == base.verdict
