import itertools

import numpy as np
import pytest

from multinormlab.optkernel import (
    BudgetExceeded,
    Certification,
    NormEstimate,
    OptimizerConfig,
    align_phase,
    dedupe_classes,
    enumerate_partitions,
    maximize_on_frames,
    maximize_on_sphere,
    maximize_on_torus,
    phase,
    to_jsonable,
    weakest,
)
from multinormlab.spaces import ScalarField


def _norm_objective(A):
    AH = A.conj().T

    def objective(V):
        W = A @ V
        norms = np.sqrt(np.sum(np.abs(W) ** 2, axis=0))
        safe = np.where(norms > 0, norms, 1.0)
        return norms, AH @ (W / safe)

    return objective


def test_config_validation():
    with pytest.raises(ValueError):
        OptimizerConfig(restarts=0)
    with pytest.raises(ValueError):
        OptimizerConfig(step_tol=0)


def test_rng_depends_only_on_seed_stream_index():
    a = OptimizerConfig(seed=3).rng(2, 7).standard_normal(4)
    b = OptimizerConfig(seed=3, restarts=99).rng(2, 7).standard_normal(4)
    c = OptimizerConfig(seed=4).rng(2, 7).standard_normal(4)
    assert np.array_equal(a, b) and not np.array_equal(a, c)


def test_weakest():
    assert weakest(Certification.EXACT, Certification.LOWER) is Certification.LOWER
    assert weakest(Certification.EXACT, Certification.HEURISTIC, Certification.LOWER) is Certification.HEURISTIC


def test_phase_handles_zero_and_tiny():
    z = np.array([0, 3j, 1e-310, -2.0])
    out = phase(z)
    assert out[0] == 0 and out[1] == pytest.approx(1j) and out[2] == pytest.approx(1.0) and out[3] == pytest.approx(-1.0)


def test_upper_bound_violation_is_flagged():
    est = NormEstimate(2.0, Certification.LOWER, upper_bound=1.0)
    assert est.info["warnings"]


def test_to_jsonable_complex_and_inf():
    assert to_jsonable(np.array([1 + 2j, 3])) == [[1.0, 2.0], [3.0, 0.0]]
    assert to_jsonable(float("inf")) == "inf"


@pytest.mark.parametrize("field", [ScalarField.REAL, ScalarField.COMPLEX])
def test_sphere_two_norm_matches_svd(cfg, field):
    rng = np.random.default_rng(1)
    A = rng.standard_normal((4, 3))
    if field is ScalarField.COMPLEX:
        A = A + 1j * rng.standard_normal((4, 3))
    est = maximize_on_sphere(_norm_objective(A), 2.0, 3, cfg, field, convex=True)
    assert est.value == pytest.approx(np.linalg.svd(A, compute_uv=False)[0], rel=1e-8)


def test_torus_real_is_sign_enumeration(cfg):
    rng = np.random.default_rng(2)
    Y = rng.standard_normal((5, 3))
    res = maximize_on_torus(_norm_objective(Y.T.astype(complex)), 5, ScalarField.REAL, cfg, convex=True)
    brute = max(np.linalg.norm(Y.T @ np.array(s)) for s in itertools.product((1, -1), repeat=5))
    assert res.value == pytest.approx(brute, rel=1e-14)
    assert res.estimate.certification is Certification.EXACT


def test_torus_complex_beats_dense_grid(cfg):
    rng = np.random.default_rng(3)
    Y = rng.standard_normal((3, 2)) + 1j * rng.standard_normal((3, 2))
    res = maximize_on_torus(_norm_objective(Y.T), 3, ScalarField.COMPLEX, cfg, convex=True)
    th = np.linspace(0, 2 * np.pi, 181, endpoint=False)
    a, b = np.meshgrid(th, th, indexing="ij")
    Xi = np.stack([np.exp(1j * a.ravel()), np.exp(1j * b.ravel()), np.ones(a.size)])
    grid = np.max(np.linalg.norm(Y.T @ Xi, axis=0))
    # the grid is a lower bound that is within O(h^2) of the maximum
    assert grid <= res.value * (1 + 1e-12)
    assert res.value <= grid * (1 + 1e-3)


def test_dedupe_classes_merges_phase_shifts():
    xi = np.exp(1j * np.array([0.3, 1.1, -0.4]))
    classes = dedupe_classes([xi, xi * np.exp(0.7j), xi.conj()])
    assert len(classes) == 2
    assert np.allclose(align_phase(xi)[-1], 1)


def test_frames_ky_fan(cfg):
    # sum of squared norms of A e_i over orthonormal e is maximized by top singular vectors
    rng = np.random.default_rng(4)
    A = rng.standard_normal((3, 4)) + 1j * rng.standard_normal((3, 4))

    def obj(E):
        W = A @ E
        return float(np.sum(np.abs(W) ** 2)), 2 * A.conj().T @ W

    est = maximize_on_frames(obj, 4, 2, cfg, ScalarField.COMPLEX, convex=True)
    s = np.linalg.svd(A, compute_uv=False)
    assert est.value == pytest.approx(s[0] ** 2 + s[1] ** 2, rel=1e-8)
    E = est.witness
    assert np.allclose(E.conj().T @ E, np.eye(2), atol=1e-10)


def test_frames_reject_too_many_vectors(cfg):
    with pytest.raises(ValueError):
        maximize_on_frames(lambda E: (0.0, E), 2, 3, cfg)


def test_enumerate_partitions_matches_brute(cfg):
    w = np.array([[3, 1, 4], [1, 5, 9]], dtype=float)

    def score(a):
        return sum(w[a[j], j] for j in range(3)) - (len(set(a.tolist())) == 1)

    best, val, count = enumerate_partitions(3, 2, score, cfg)
    brute = max(itertools.product(range(2), repeat=3), key=lambda a: score(np.array(a)))
    assert count == 8 and best == brute and val == score(np.array(brute))


def test_enumerate_partitions_batched_agrees(cfg):
    rng = np.random.default_rng(5)
    w = rng.standard_normal((3, 5))
    single = enumerate_partitions(5, 3, lambda a: w[a, np.arange(5)].sum(), cfg)
    batched = enumerate_partitions(5, 3, lambda A: w[A, np.arange(5)].sum(axis=1), cfg, batched=True)
    assert single[0] == batched[0] and single[1] == pytest.approx(batched[1], rel=1e-15)


def test_enumerate_partitions_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_partitions(12, 4, lambda a: 0.0, OptimizerConfig(brute_budget=1000))
