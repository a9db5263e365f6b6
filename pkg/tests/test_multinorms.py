import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multinormlab.optkernel import Certification, OptimizerConfig
from multinormlab.multinorms import (
    MultiNormKind,
    axiom_report,
    canonical,
    delta_value,
    evaluate,
    hilbert_norm,
    max_hilbert_ratio,
    max_norm,
    min_norm,
    phi_estimate,
    pq_norm,
    standard_t_norm,
    value_at_witness,
)
from multinormlab.spaces import InvalidExponent, SequenceSpace, VectorTuple, delta_basis, dft_tuple, p_norm


def _tuple(seed, n, m, r=2.0, field="complex"):
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((n, m))
    if field == "complex":
        X = X + 1j * rng.standard_normal((n, m))
    return VectorTuple.of(X, r, field)


def test_kind_parse():
    assert MultiNormKind.parse("pq:1,2") == MultiNormKind.pq(1, 2)
    assert MultiNormKind.parse(" STD:3 ").t == 3.0
    assert MultiNormKind.parse("hilbert").label() == "hilbert"
    for bad in ("pq:2,1", "pq:1", "foo", "pq:0.5,2"):
        with pytest.raises((ValueError, InvalidExponent)):
            MultiNormKind.parse(bad)


def test_kind_validation():
    with pytest.raises(InvalidExponent):
        evaluate(MultiNormKind.standard(1.5), _tuple(0, 2, 2, r=2.0))
    with pytest.raises(InvalidExponent):
        evaluate(MultiNormKind.hilbert(), _tuple(0, 2, 2, r=3.0))


def test_min_is_largest_vector_norm():
    x = VectorTuple.of([[3, 4], [1, 0], [0, -6]], 2, "real")
    est = min_norm(x)
    assert est.value == 6.0 and est.witness == 2 and est.certification is Certification.EXACT


def test_canonical_drops_zero_and_repeated():
    x = VectorTuple.of([[1, 0], [0, 0], [1, 0], [0, 2]], 2, "real")
    c = canonical(x)
    assert c.tuple.n == 2 and c.n_input == 4


@pytest.mark.parametrize("p,q,r", [(1, 1, 2), (1, 2, 2), (2, 2, 2), (2, 3, 1), (1, 2, 3), (2, 2, 1.5)])
def test_delta_basis_closed_form(cfg, p, q, r):
    n = 3
    est = pq_norm(delta_basis(n, r), p, q, cfg)
    assert est.value == pytest.approx(delta_value(n, p, q, r), rel=1e-6)
    assert est.value <= delta_value(n, p, q, r) * (1 + 1e-9)


def test_delta_value_formula():
    # n^(min(1/q, max(0, 1/q - 1/p + 1/r))) evaluated by hand
    assert delta_value(4, 1, 2, 2) == pytest.approx(1.0)
    assert delta_value(4, 2, 2, 2) == pytest.approx(2.0)
    assert delta_value(8, 1, 1, 3) == pytest.approx(8 ** (1 / 3))
    assert delta_value(9, 2, 2, 1) == pytest.approx(3.0)


def test_hilbert_orthogonal_is_bessel(cfg):
    x = VectorTuple.of(np.diag([3.0, 4.0]), 2, "real")
    est = hilbert_norm(x, cfg)
    assert est.value == pytest.approx(5.0) and est.certification is Certification.EXACT


def test_hilbert_of_repeated_direction(cfg):
    v = np.array([1.0, 2.0, 2.0])
    x = VectorTuple.of([v, 0.5 * v, -v], 2, "real")
    assert hilbert_norm(x, cfg).value == pytest.approx(3.0, rel=1e-9)


@pytest.mark.parametrize("seed", range(3))
def test_hilbert_equals_two_two(cfg, seed):
    x = _tuple(seed, 3, 3)
    h = hilbert_norm(x, cfg).value
    assert pq_norm(x, 2, 2, cfg).value == pytest.approx(h, rel=1e-3)


def test_level_two_max_equals_hilbert(cfg):
    pair = max_hilbert_ratio(_tuple(11, 2, 3), cfg)
    assert pair.ratio == pytest.approx(1.0, rel=1e-6)


def test_max_dominates_hilbert_and_min(cfg):
    x = _tuple(12, 3, 2)
    mx = max_norm(x, cfg).value
    assert mx >= hilbert_norm(x, cfg).value * (1 - 1e-12) and mx >= min_norm(x).value


def test_max_on_l1_is_sum_of_largest_entries(cfg):
    # on l^1 the maximum multi-norm is sum_j max_i |x_ij|
    x = _tuple(13, 3, 4, r=1.0, field="real")
    est = max_norm(x, cfg)
    assert est.value == pytest.approx(np.abs(x.vectors).max(axis=0).sum(), rel=1e-14)
    assert est.certification is Certification.EXACT


def test_std_greedy_equals_enumeration(cfg):
    x = _tuple(14, 3, 5, r=1.5, field="real")
    g = standard_t_norm(x, 1.5, cfg, route="greedy").value
    e = standard_t_norm(x, 1.5, cfg, route="enumerate").value
    assert g == e


def test_std_local_never_exceeds_enumeration(cfg):
    for seed in range(5):
        x = _tuple(20 + seed, 3, 5, r=2.0, field="real")
        e = standard_t_norm(x, 4, cfg, route="enumerate").value
        loc = standard_t_norm(x, 4, cfg, route="local").value
        assert loc <= e * (1 + 1e-12)


@pytest.mark.parametrize("t", [2.0, 3.0, 6.0])
def test_std_delta_basis_exact(cfg, t):
    assert standard_t_norm(delta_basis(3, 2), t, cfg).value == 3 ** (1 / t)


def test_std_greedy_requires_t_equal_r(cfg):
    with pytest.raises(ValueError):
        standard_t_norm(_tuple(0, 2, 2, field="real"), 3, cfg, route="greedy")


@pytest.mark.parametrize("kind", ["min", "max", "pq:1,2", "pq:2,3", "std:3", "hilbert"])
def test_value_at_witness_round_trip(cfg, kind):
    k = MultiNormKind.parse(kind)
    x = _tuple(30, 3, 3)
    est = evaluate(k, x, cfg)
    assert value_at_witness(k, x, est.witness, cfg) == pytest.approx(est.value, rel=1e-9)


exact_kinds = st.sampled_from([("min", 2.0, "complex"), ("std:2", 2.0, "complex"), ("std:3", 1.5, "real"),
                               ("max", 1.0, "real"), ("pq:1,2", 1.0, "real"), ("hilbert", 2.0, "real")])


@settings(max_examples=40, deadline=None)
@given(exact_kinds, st.integers(0, 10**6), st.integers(1, 3), st.integers(1, 3))
def test_axioms_on_exact_routes(kind_case, seed, n, m):
    kind, r, field = kind_case
    if kind == "hilbert":
        m = min(m, 2)
    x = _tuple(seed, n, m, r=r, field=field)
    rng = np.random.default_rng(seed + 1)
    alpha = rng.uniform(-1, 1, n) if field == "real" else rng.uniform(0, 1, n) * np.exp(1j * rng.uniform(0, 7, n))
    rep = axiom_report(MultiNormKind.parse(kind), x, rng.permutation(n), alpha, OptimizerConfig(restarts=2))
    assert rep.exact()
    assert rep.a1() and rep.a3()
    assert rep.a2() and rep.a4()


def test_phi_two_two_on_l2(cfg):
    est = phi_estimate(MultiNormKind.pq(2, 2), SequenceSpace(3, 2), 3, cfg)
    predicted = 3 ** est.predicted_exponent
    assert est.predicted_exponent == pytest.approx(0.5)
    assert 0.95 * predicted <= est.value.value <= predicted * (1 + 1e-6)
    X = np.asarray(est.value.witness)
    assert np.allclose([p_norm(v, 2) for v in X], 1.0)


def test_phi_min_and_std_closed_forms(cfg):
    assert phi_estimate(MultiNormKind.min(), SequenceSpace(3, 2), 4, cfg).value.value == 1.0
    assert phi_estimate(MultiNormKind.standard(3), SequenceSpace(4, 2), 4, cfg).value.value == 4 ** (1 / 3)


def test_fourier_tuple_max_hilbert_ratio_below_ceiling(cfg):
    pair = max_hilbert_ratio(dft_tuple(3, 2), cfg)
    assert 1 - 1e-9 <= pair.ratio <= 2 / math.sqrt(math.pi) + 1e-3
