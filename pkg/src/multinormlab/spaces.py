"""Finite-dimensional sequence spaces l^r_m over R or C and the vector tuples living in them."""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

INF = math.inf


class InvalidExponent(ValueError):
    pass


class ScalarField(str, Enum):
    REAL = "real"
    COMPLEX = "complex"

    @classmethod
    def parse(cls, value: "ScalarField | str") -> "ScalarField":
        if isinstance(value, ScalarField):
            return value
        return cls(str(value).lower())


def exponent(p: Any) -> float:
    """Coerce p to a float in [1, inf]; accepts 'inf', Fractions and strings like '4/3'."""
    if isinstance(p, str):
        s = p.strip().lower()
        if s in ("inf", "infinity", "oo"):
            value = INF
        else:
            try:
                value = float(Fraction(s))
            except (ValueError, ZeroDivisionError) as exc:
                raise InvalidExponent(f"cannot parse exponent {p!r}") from exc
    else:
        value = float(p)
    if math.isnan(value) or value < 1.0:
        raise InvalidExponent(f"exponent must lie in [1, inf], got {p!r}")
    return value


def conjugate_exponent(p: Any) -> float:
    p = exponent(p)
    if p == 1.0:
        return INF
    if p == INF:
        return 1.0
    if p == 2.0:
        return 2.0
    return p / (p - 1.0)


def inv(p: float) -> float:
    """1/p with 1/inf = 0."""
    return 0.0 if p == INF else 1.0 / p


def p_norm(v: Any, r: Any) -> float:
    r = exponent(r)
    a = np.abs(np.asarray(v, dtype=complex)).ravel()
    if a.size == 0:
        return 0.0
    if r == INF:
        return float(a.max())
    if r == 1.0:
        return float(a.sum())
    if r == 2.0:
        return float(np.sqrt(np.dot(a, a)))
    top = a.max()
    if top == 0.0:
        return 0.0
    # scale first so large r does not underflow
    return float(top * np.sum((a / top) ** r) ** (1.0 / r))


def p_norms(arr: np.ndarray, r: float, axis: int = -1) -> np.ndarray:
    """Vectorised p_norm along an axis."""
    a = np.abs(arr)
    if r == INF:
        return a.max(axis=axis)
    if r == 1.0:
        return a.sum(axis=axis)
    if r == 2.0:
        return np.sqrt(np.sum(a * a, axis=axis))
    top = a.max(axis=axis, keepdims=True)
    safe = np.where(top > 0, top, 1.0)
    out = np.squeeze(safe, axis=axis) * np.sum((a / safe) ** r, axis=axis) ** (1.0 / r)
    return np.where(np.squeeze(top, axis=axis) > 0, out, 0.0)


def lorentz_norm(v: Any, p: Any, q: Any) -> float:
    """(sum_k k^(q/p - 1) (v*_k)^q)^(1/q) over the decreasing rearrangement v* of |v|.

    Both orders of (p, q) are accepted: q <= p gives decreasing weights (a norm,
    e.g. l^{2,1}), p <= q is the quasi-norm convention.
    """
    p = exponent(p)
    q = exponent(q)
    if p == INF or q == INF:
        raise InvalidExponent("Lorentz exponents must be finite")
    a = np.abs(np.asarray(v, dtype=complex)).ravel()
    star = a[np.argsort(-a, kind="stable")]
    k = np.arange(1, star.size + 1, dtype=float)
    return float(np.sum(k ** (q / p - 1.0) * star**q) ** (1.0 / q))


def inner(x: Any, y: Any) -> complex:
    """<x, y> = sum_j x_j conj(y_j), linear in the first slot."""
    return complex(np.vdot(np.asarray(y, dtype=complex), np.asarray(x, dtype=complex)))


@dataclass(frozen=True)
class SequenceSpace:
    m: int
    r: float
    field: ScalarField = ScalarField.COMPLEX

    def __post_init__(self) -> None:
        if int(self.m) < 1:
            raise ValueError("dimension m must be positive")
        r = exponent(self.r)
        if r == INF:
            raise InvalidExponent("the ambient exponent r must be finite")
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "field", ScalarField.parse(self.field))

    @property
    def s(self) -> float:
        return conjugate_exponent(self.r)

    def dual(self) -> "SequenceSpace":
        # the dual of l^r_m is l^s_m; s may be infinite, so bypass the finiteness check
        out = object.__new__(SequenceSpace)
        object.__setattr__(out, "m", self.m)
        object.__setattr__(out, "r", self.s)
        object.__setattr__(out, "field", self.field)
        return out

    def norm(self, v: Any) -> float:
        return p_norm(v, self.r)


def _as_vectors(vectors: Any, field: ScalarField) -> np.ndarray:
    arr = np.array(vectors, dtype=complex)
    if arr.ndim == 1:
        arr = arr[None, :]
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError("vectors must form a non-empty n x m array")
    if field is ScalarField.REAL:
        if np.any(arr.imag != 0):
            raise ValueError("real space given vectors with nonzero imaginary parts")
    if not np.all(np.isfinite(arr)):
        raise ValueError("vectors must be finite")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class VectorTuple:
    """n vectors of l^r_m, stored as an n x m complex array (row i is x_i)."""

    space: SequenceSpace
    vectors: np.ndarray

    def __post_init__(self) -> None:
        arr = _as_vectors(self.vectors, self.space.field)
        if arr.shape[1] != self.space.m:
            raise ValueError(f"rows have length {arr.shape[1]}, space dimension is {self.space.m}")
        object.__setattr__(self, "vectors", arr)

    @classmethod
    def of(cls, vectors: Any, r: Any = 2, field: ScalarField | str = ScalarField.COMPLEX) -> "VectorTuple":
        arr = np.array(vectors, dtype=complex)
        if arr.ndim == 1:
            arr = arr[None, :]
        return cls(SequenceSpace(arr.shape[1], r, ScalarField.parse(field)), arr)

    @property
    def n(self) -> int:
        return self.vectors.shape[0]

    @property
    def m(self) -> int:
        return self.vectors.shape[1]

    @property
    def r(self) -> float:
        return self.space.r

    @property
    def field(self) -> ScalarField:
        return self.space.field

    @property
    def is_real(self) -> bool:
        return self.space.field is ScalarField.REAL

    def matrix(self) -> np.ndarray:
        """The m x n matrix whose columns are the x_i."""
        return self.vectors.T.copy()

    def norms(self) -> np.ndarray:
        return p_norms(self.vectors, self.r, axis=1)

    def gram(self) -> np.ndarray:
        """G[i, j] = <x_i, x_j>."""
        return self.vectors @ self.vectors.conj().T

    def with_vectors(self, vectors: Any) -> "VectorTuple":
        arr = np.array(vectors, dtype=complex)
        if arr.ndim == 1:
            arr = arr[None, :]
        return VectorTuple(SequenceSpace(self.m, self.r, self.field), arr)

    def permuted(self, order: Sequence[int]) -> "VectorTuple":
        return self.with_vectors(self.vectors[list(order)])

    def scaled(self, alpha: Sequence[complex]) -> "VectorTuple":
        return self.with_vectors(self.vectors * np.asarray(alpha, dtype=complex)[:, None])

    def padded(self) -> "VectorTuple":
        """Append a zero vector."""
        return self.with_vectors(np.vstack([self.vectors, np.zeros((1, self.m))]))

    def duplicated_last(self) -> "VectorTuple":
        return self.with_vectors(np.vstack([self.vectors, self.vectors[-1:]]))

    def to_json(self) -> dict:
        if self.is_real:
            rows = [[float(z.real) for z in row] for row in self.vectors]
        else:
            rows = [[[float(z.real), float(z.imag)] for z in row] for row in self.vectors]
        return {
            "field": self.field.value,
            "r": self.r,
            "m": self.m,
            "n": self.n,
            "vectors": rows,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data: dict | str) -> "VectorTuple":
        if isinstance(data, str):
            data = json.loads(data)
        field = ScalarField.parse(data.get("field", "complex"))
        rows = []
        for row in data["vectors"]:
            out_row = []
            for entry in row:
                if isinstance(entry, (list, tuple)):
                    if len(entry) != 2:
                        raise ValueError("complex entries must be [re, im] pairs")
                    out_row.append(complex(float(entry[0]), float(entry[1])))
                else:
                    out_row.append(complex(float(entry)))
            rows.append(out_row)
        if len({len(row) for row in rows}) != 1:
            raise ValueError("all vectors must have the same length")
        arr = np.array(rows, dtype=complex)
        m = int(data.get("m", arr.shape[1]))
        n = int(data.get("n", arr.shape[0]))
        if arr.shape != (n, m):
            raise ValueError(f"declared shape ({n}, {m}) does not match vectors {arr.shape}")
        return cls(SequenceSpace(m, data.get("r", 2), field), arr)


def delta_basis(n: int, r: Any = 2, field: ScalarField | str = ScalarField.REAL, m: int | None = None) -> VectorTuple:
    """(delta_1, ..., delta_n) in l^r_m, m >= n."""
    m = n if m is None else m
    if m < n:
        raise ValueError("need m >= n for the unit-vector tuple")
    return VectorTuple.of(np.eye(n, m), r, field)


def dft_tuple(n: int, r: Any = 2, field: ScalarField | str = ScalarField.COMPLEX) -> VectorTuple:
    """f_i = n^(-1/r) (zeta^(-i), zeta^(-2i), ..., zeta^(-ni)) with zeta = exp(2 pi i / n)."""
    if ScalarField.parse(field) is not ScalarField.COMPLEX:
        raise ValueError("the Fourier tuple needs complex scalars")
    if n < 1:
        raise ValueError("n must be positive")
    r = exponent(r)
    idx = np.arange(1, n + 1)
    phases = np.exp(-2j * np.pi * np.outer(idx, idx) / n)
    return VectorTuple.of(phases * n ** (-inv(r)), r, ScalarField.COMPLEX)


def sign_patterns(n: int) -> np.ndarray:
    """All 2^n rows of +-1, in lexicographic order with +1 first."""
    return np.array(list(itertools.product((1.0, -1.0), repeat=n)))


KHINTCHINE_CAP = 12


@dataclass(frozen=True, eq=False)
class KhintchinePair:
    n: int
    r: float
    R: np.ndarray
    S: np.ndarray

    def embed(self, x: Any) -> np.ndarray:
        return self.R @ np.asarray(x, dtype=complex)

    def embed_dual(self, y: Any) -> np.ndarray:
        return self.S @ np.asarray(y, dtype=complex)


def khintchine_pair(n: int, r: Any, cap: int = KHINTCHINE_CAP) -> KhintchinePair:
    """Rademacher matrices R = 2^(-n/r) eps, S = 2^(-n/s) eps with <Rx, Sy> = <x, y>."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > cap:
        raise ValueError(f"n = {n} exceeds the cap {cap} (the matrices have 2^n rows)")
    r = exponent(r)
    s = conjugate_exponent(r)
    eps = sign_patterns(n)
    R = 2.0 ** (-n * inv(r)) * eps
    S = 2.0 ** (-n * inv(s)) * eps
    R.setflags(write=False)
    S.setflags(write=False)
    return KhintchinePair(n, r, R, S)


def rademacher_ratio(pair: KhintchinePair, x: Any) -> float:
    """||R x||_r / ||x||_2, the measured Khintchine ratio for one x."""
    x = np.asarray(x, dtype=complex)
    return p_norm(pair.R @ x, pair.r) / p_norm(x, 2)
