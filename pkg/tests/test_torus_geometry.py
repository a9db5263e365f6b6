import math

import numpy as np
import pytest

from multinormlab.multinorms import hilbert_norm
from multinormlab.optkernel import OptimizerConfig
from multinormlab.spaces import ScalarField, VectorTuple
from multinormlab.torus_geometry import (
    LITTLE_GROTHENDIECK,
    TorusClass,
    TriangleData,
    Verdict,
    ceiling_survey,
    classify_triple,
    cn_lower_bound,
    complex_witness_4,
    extreme_point_test,
    gap_tuple,
    maximize_F,
    mu1_maximize,
    real_witness_3,
    scaled_complex_witness_4,
    sdp_frame,
)


def _grid_max(d: TriangleData, k: int = 2001) -> float:
    th = np.linspace(0, 2 * np.pi, k, endpoint=False)
    r, s = np.meshgrid(th, th, indexing="ij")
    return float(np.max(d.a * np.cos(r) + d.b * np.cos(s) + d.c * np.cos(d.M - r - s)))


@pytest.mark.parametrize("a,b,c,M", [
    (1, 1, 1, 0.0), (1, 1, 1, math.pi), (1, 2, 3, math.pi), (2, 2, 1, 1.0),
    (3, 1, 1, -2.0), (0.5, 0.7, 0.9, 2.5), (1, 0, 2, 1.3), (4, 1, 1, math.pi),
])
def test_maximize_F_against_grid(a, b, c, M):
    d = TriangleData(a, b, c, M)
    res = maximize_F(d)
    grid = _grid_max(d)
    assert res.value >= grid - 1e-12
    assert res.value <= grid + 1e-4
    for r, s, t in res.triples:
        assert math.isclose((r + s + t - d.M) / (2 * math.pi), round((r + s + t - d.M) / (2 * math.pi)), abs_tol=1e-9)
        assert d.F(r, s, t) == pytest.approx(res.value, abs=1e-12)


def test_triangle_case_has_two_maximizers():
    # M = pi with 1/a, 1/b, 1/c forming a triangle: two mirror-image maximizers
    res = maximize_F(TriangleData(1, 1, 1, math.pi))
    assert len(res.triples) == 2


def test_classify_triple_positive_inner_products_is_class_one(cfg):
    y = np.array([[1, 0.2, 0], [0.2, 1, 0.1], [0.3, 0.1, 1.0]])
    res = classify_triple(*y, cfg=cfg)
    assert res.cls is TorusClass.I and len(res.maximizer_classes) == 1
    assert res.value == pytest.approx(mu1_maximize(VectorTuple.of(y, 2, "real"), cfg).value, rel=1e-12)


def test_classify_triple_value_matches_torus_search(cfg):
    rng = np.random.default_rng(7)
    Y = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    res = classify_triple(*Y, cfg=cfg)
    assert res.value == pytest.approx(mu1_maximize(VectorTuple.of(Y, 2, "complex"), cfg).value, rel=1e-9)
    assert res.cls in (TorusClass.IV, TorusClass.V, TorusClass.I, TorusClass.II, TorusClass.III)


def test_classify_triple_witness_is_class_two(cfg):
    res = classify_triple(*real_witness_3().vectors, cfg=cfg)
    assert res.cls is TorusClass.II and len(res.maximizer_classes) == 2


def test_classify_triple_orthogonal_is_degenerate(cfg):
    res = classify_triple(*np.eye(3), cfg=cfg)
    assert res.cls is TorusClass.DEGENERATE and res.value == pytest.approx(math.sqrt(3))


def test_real_witness_facts(cfg):
    y = real_witness_3()
    G = y.gram().real * 11
    assert np.array_equal(np.round(G - np.diag(np.diag(G)), 12), [[0, 1, -1], [1, 0, 1], [-1, 1, 0]])
    assert mu1_maximize(y, cfg).value == pytest.approx(1.0, abs=1e-12)
    assert extreme_point_test(y, cfg).verdict is Verdict.EXTREME


def test_complex_witness_facts(cfg):
    G = complex_witness_4().gram()
    off = G - np.diag(np.diag(G))
    assert np.all(off[~np.eye(4, dtype=bool)] == -1)
    y = scaled_complex_witness_4()
    res = mu1_maximize(y, cfg)
    assert res.value == pytest.approx(1.0, abs=1e-9)
    assert all(abs(np.sum(xi)) <= 1e-6 for xi in res.classes)
    rep = extreme_point_test(y, cfg)
    assert rep.verdict is Verdict.EXTREME and rep.nullspace_dim == 0
    assert rep.info["sum_conditions_force_equal"]


def test_extreme_test_requires_unit_mu(cfg):
    with pytest.raises(ValueError):
        extreme_point_test(complex_witness_4(), cfg)


def test_orthogonal_pair_is_extreme(cfg):
    # mu_1^2 = |y1|^2 + |y2|^2 + 2|<y1, y2>| averages strictly above 1 on y +- u
    y = VectorTuple.of(np.eye(2) / math.sqrt(2), 2, "complex")
    assert extreme_point_test(y, cfg).verdict is Verdict.EXTREME


def test_one_active_sign_is_not_extreme(cfg):
    # only |y1 + y2| is active, so u = (v, -v) keeps mu_1 = 1 for small v
    y = VectorTuple.of([[0.5, 0.0], [0.5, 0.0]], 2, "real")
    rep = extreme_point_test(y, cfg)
    assert rep.verdict is Verdict.NOT_EXTREME and rep.nullspace_dim > 0
    U = rep.witness
    for sgn in (1, -1):
        assert mu1_maximize(y.with_vectors(y.vectors + sgn * U), cfg).value <= 1 + 1e-8


def test_gap_tuple_has_hilbert_norm_at_most_one(cfg):
    rng = np.random.default_rng(8)
    Y = rng.standard_normal((4, 3)) + 1j * rng.standard_normal((4, 3))
    _, W = sdp_frame(Y, False, cfg)
    X = gap_tuple(Y, W)
    assert hilbert_norm(VectorTuple.of(X, 2, "complex"), cfg).value <= 1 + 1e-9


def test_cn_level_two_is_one():
    res = cn_lower_bound(2, 2, "complex", OptimizerConfig(restarts=4), steps=5)
    assert res.ratio == pytest.approx(1.0, abs=1e-6)


def test_small_survey_stays_below_ceiling():
    res = ceiling_survey(count=6, nmax=3, dmax=3, perturbations=2)
    assert len(res.entries) == 6
    assert 1 - 1e-9 <= min(e.ratio for e in res.entries)
    assert res.max_ratio <= LITTLE_GROTHENDIECK + 1e-3
