import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from multinormlab.spaces import (
    INF,
    InvalidExponent,
    ScalarField,
    SequenceSpace,
    VectorTuple,
    conjugate_exponent,
    delta_basis,
    dft_tuple,
    exponent,
    khintchine_pair,
    lorentz_norm,
    p_norm,
    rademacher_ratio,
)

# numpy underflows below ~1e-100 for large r, so keep the oracle in its safe range
finite = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False).filter(lambda t: t == 0 or abs(t) > 1e-50)


@settings(max_examples=60, deadline=None)
@given(arrays(float, st.integers(1, 8), elements=finite), st.sampled_from([1.0, 1.5, 2.0, 3.0, 7.0, INF]))
def test_p_norm_matches_numpy(v, r):
    assert p_norm(v, r) == pytest.approx(np.linalg.norm(v, ord=r), rel=1e-12, abs=1e-300)


def test_p_norm_large_exponent_does_not_underflow():
    assert p_norm([1e-200, 2e-200], 50) == pytest.approx(2e-200 * (1 + 2**-50) ** (1 / 50), rel=1e-12)


@pytest.mark.parametrize("p,expect", [(1, INF), (2, 2.0), (4 / 3, 4.0), (3, 1.5), (INF, 1.0), ("4/3", 4.0)])
def test_conjugate_exponent(p, expect):
    assert conjugate_exponent(p) == pytest.approx(expect, rel=1e-15)


@pytest.mark.parametrize("bad", [0.5, 0, -1, "nan", float("nan")])
def test_exponent_rejects_below_one(bad):
    with pytest.raises((InvalidExponent, ValueError)):
        exponent(bad)


def test_lorentz_diagonal_is_lp():
    v = np.array([3.0, -1.0, 2.0])
    assert lorentz_norm(v, 3, 3) == pytest.approx(p_norm(v, 3), rel=1e-14)


def test_lorentz_two_one_of_ones():
    # weights k^(1/2 - 1) on the rearrangement (1, 1)
    assert lorentz_norm([1, 1], 2, 1) == pytest.approx(1 + 1 / math.sqrt(2), rel=1e-15)


@pytest.mark.parametrize("n", [1, 2, 3, 5])
@pytest.mark.parametrize("r", [1.0, 2.0, 3.0])
def test_dft_tuple_unit_vectors(n, r):
    x = dft_tuple(n, r)
    assert np.allclose(x.norms(), 1.0, atol=1e-14)
    G = x.gram()
    assert np.allclose(G - np.diag(np.diag(G)), 0, atol=1e-13)


def test_dft_tuple_needs_complex():
    with pytest.raises(ValueError):
        dft_tuple(3, 2, ScalarField.REAL)


@pytest.mark.parametrize("n", range(1, 9))
def test_khintchine_duality_exact(n):
    rng = np.random.default_rng(n)
    pair = khintchine_pair(n, 3.0)
    x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    y = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    lhs = np.sum(pair.embed(x) * np.conj(pair.embed_dual(y)))
    assert abs(lhs - np.vdot(y, x)) <= 1e-12 * max(1, abs(np.vdot(y, x)))


def test_khintchine_isometry_at_two():
    pair = khintchine_pair(5, 2)
    x = np.arange(1, 6, dtype=float)
    assert rademacher_ratio(pair, x) == pytest.approx(1.0, rel=1e-14)


def test_khintchine_cap():
    with pytest.raises(ValueError):
        khintchine_pair(13, 2)


def test_tuple_json_round_trip_complex():
    x = VectorTuple.of([[1 + 2j, 0], [0.5, -1j]], 3, "complex")
    y = VectorTuple.from_json(x.dumps())
    assert np.array_equal(x.vectors, y.vectors) and y.r == 3 and y.field is ScalarField.COMPLEX


def test_tuple_json_round_trip_real():
    x = delta_basis(3, 1.5, m=4)
    y = VectorTuple.from_json(x.to_json())
    assert np.array_equal(x.vectors, y.vectors) and (y.n, y.m) == (3, 4)


def test_tuple_rejects_complex_entries_in_real_space():
    with pytest.raises(ValueError):
        VectorTuple.of([[1j, 0]], 2, "real")


def test_tuple_rejects_shape_mismatch():
    with pytest.raises(ValueError):
        VectorTuple.from_json({"field": "real", "r": 2, "m": 3, "n": 1, "vectors": [[1, 2]]})


def test_space_rejects_infinite_r():
    with pytest.raises(InvalidExponent):
        SequenceSpace(2, INF)


def test_tuple_moves():
    x = VectorTuple.of([[1, 0], [0, 2]], 2, "real")
    assert np.array_equal(x.permuted([1, 0]).vectors, x.vectors[::-1])
    assert x.padded().n == 3 and not np.any(x.padded().vectors[-1])
    assert np.array_equal(x.duplicated_last().vectors[-1], x.vectors[-1])
