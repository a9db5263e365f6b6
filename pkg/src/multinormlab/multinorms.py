"""Minimum, maximum, (p,q), standard t and Hilbert multi-norms on tuples in l^r_m, and rates of growth."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Any, Optional, Sequence

import numpy as np

from .optkernel import (
    BudgetExceeded,
    Certification,
    NormEstimate,
    OptimizerConfig,
    count_assignments,
    enumerate_partitions,
    maximize_on_frames,
    norm_grad,
    phase,
    weakest,
)
from .spaces import INF, InvalidExponent, ScalarField, SequenceSpace, VectorTuple, conjugate_exponent, exponent, p_norm
from .weak_summing import OperatorMatrix, op_norm, ratio_ascent, summing_constant_estimate

SUBSET_LIMIT = 1000


# ------------------------------------------------------------------------ kinds


@dataclass(frozen=True)
class MultiNormKind:
    name: str
    p: Optional[float] = None
    q: Optional[float] = None
    t: Optional[float] = None

    @staticmethod
    def min() -> "MultiNormKind":
        return MultiNormKind("min")

    @staticmethod
    def max() -> "MultiNormKind":
        return MultiNormKind("max")

    @staticmethod
    def pq(p: Any, q: Any) -> "MultiNormKind":
        p, q = exponent(p), exponent(q)
        check_pq(p, q)
        return MultiNormKind("pq", p=p, q=q)

    @staticmethod
    def standard(t: Any) -> "MultiNormKind":
        return MultiNormKind("std", t=exponent(t))

    @staticmethod
    def hilbert() -> "MultiNormKind":
        return MultiNormKind("hilbert")

    @classmethod
    def parse(cls, text: str) -> "MultiNormKind":
        """'min', 'max', 'hilbert', 'pq:P,Q' or 'std:T'."""
        text = text.strip().lower()
        if text in ("min", "max", "hilbert"):
            return getattr(cls, text)()
        if text.startswith("pq:"):
            parts = text[3:].split(",")
            if len(parts) != 2:
                raise ValueError(f"expected pq:P,Q, got {text!r}")
            return cls.pq(parts[0], parts[1])
        if text.startswith("std:"):
            return cls.standard(text[4:])
        raise ValueError(f"unknown multi-norm kind {text!r}")

    def validate(self, space: SequenceSpace) -> None:
        if self.name == "std" and self.t < space.r:
            raise InvalidExponent(f"standard t-multi-norm needs t >= r, got t = {self.t}, r = {space.r}")
        if self.name == "hilbert" and space.r != 2.0:
            raise InvalidExponent("the Hilbert multi-norm needs r = 2")

    def label(self) -> str:
        if self.name == "pq":
            return f"pq:{self.p:g},{self.q:g}"
        if self.name == "std":
            return f"std:{self.t:g}"
        return self.name


def check_pq(p: float, q: float) -> None:
    if not (1.0 <= p <= q < INF):
        raise InvalidExponent(f"need 1 <= p <= q < inf, got p = {p}, q = {q}")


# ------------------------------------------------------------- canonical tuples


@dataclass(frozen=True, eq=False)
class Canonical:
    """A tuple with zero vectors and repeated vectors removed, rows in a fixed order.

    origin[k] is the index in the input of reduced row k. Every multi-norm is
    unchanged by these moves (permutation, zero padding, duplication), so
    evaluating the reduced tuple makes those identities exact.
    """

    tuple: Optional[VectorTuple]
    origin: np.ndarray
    n_input: int


def canonical(x: VectorTuple) -> Canonical:
    V = x.vectors
    keep = [i for i in range(x.n) if np.any(V[i] != 0)]
    seen: dict[bytes, int] = {}
    uniq = []
    for i in keep:
        key = V[i].tobytes()
        if key not in seen:
            seen[key] = i
            uniq.append(i)
    if not uniq:
        return Canonical(None, np.zeros(0, dtype=int), x.n)
    rows = V[uniq]
    keys = np.concatenate([rows.real, rows.imag], axis=1)
    order = np.lexsort(keys.T[::-1])
    origin = np.array(uniq)[order]
    return Canonical(x.with_vectors(V[origin]), origin, x.n)


def _expand_rows(c: Canonical, W: np.ndarray, width: int) -> np.ndarray:
    out = np.zeros((c.n_input, width), dtype=complex)
    out[c.origin] = W
    return out


def norming_functional(v: np.ndarray, r: float) -> np.ndarray:
    """The unit vector of l^s paired with v to give ||v||_r."""
    nrm = p_norm(v, r)
    if nrm == 0:
        return np.zeros_like(v)
    if r == 1.0:
        return np.where(v != 0, phase(v), 0)
    return phase(v) * (np.abs(v) / nrm) ** (r - 1.0)


def is_unit_basis(x: VectorTuple) -> bool:
    """Rows are unimodular multiples of distinct standard unit vectors."""
    support = []
    for row in x.vectors:
        nz = np.flatnonzero(row)
        if nz.size != 1 or abs(abs(row[nz[0]]) - 1.0) > 1e-15:
            return False
        support.append(int(nz[0]))
    return len(set(support)) == len(support)


# -------------------------------------------------------------------- min norm


def min_norm(x: VectorTuple) -> NormEstimate:
    norms = x.norms()
    i = int(np.argmax(norms))
    value = float(norms[i])
    return NormEstimate(value, Certification.EXACT, i, upper_bound=value, info={"route": "closed-form"})


# -------------------------------------------------------------------- (p,q) norm


def _pq_numerator(X: np.ndarray, q: float):
    """(sum_i |<x_i, lambda_i>|^q)^(1/q) for Lambda with columns lambda_i (X holds rows x_i)."""
    XT = X.T

    def numer(L: np.ndarray) -> tuple[float, np.ndarray]:
        c = np.sum(XT * L.conj(), axis=0)
        a = np.abs(c)
        f = p_norm(a, q)
        if f == 0:
            return 0.0, np.zeros_like(L)
        w = (a / f) ** (q - 1.0)
        return f, XT * (np.conj(phase(c)) * w)[None, :]

    return numer


def _sum_numerator(X: np.ndarray):
    """|sum_i <x_i, lambda_i>|."""
    XT = X.T

    def numer(L: np.ndarray) -> tuple[float, np.ndarray]:
        c = np.sum(XT * L.conj())
        f = abs(c)
        if f == 0:
            return 0.0, np.zeros_like(L)
        return f, XT * np.conj(c / f)

    return numer


def _single(x: VectorTuple, c: Canonical) -> NormEstimate:
    v = c.tuple.vectors[0]
    value = p_norm(v, x.r)
    lam = norming_functional(v, x.r)
    return NormEstimate(value, Certification.EXACT, _expand_rows(c, lam[None, :], x.m), upper_bound=value,
                        info={"route": "single-vector"})


def _zero(x: VectorTuple) -> NormEstimate:
    return NormEstimate(0.0, Certification.EXACT, np.zeros((x.n, x.m), dtype=complex), upper_bound=0.0,
                        info={"route": "zero"})


def delta_value(n: int, p: float, q: float, r: float) -> float:
    from .classify import delta_exponent

    return float(n ** delta_exponent(p, q, r))


def pq_norm(x: VectorTuple, p: Any, q: Any, cfg: OptimizerConfig = OptimizerConfig(), seeds: Sequence[np.ndarray] = ()) -> NormEstimate:
    """(p,q)-multi-norm: sup of (sum |<x_i, lambda_i>|^q)^(1/q) over dual tuples with mu_{p,n}(lambda) <= 1.

    The witness is the n x m array of dual vectors lambda_i.
    """
    p, q = exponent(p), exponent(q)
    check_pq(p, q)
    c = canonical(x)
    if c.tuple is None:
        return _zero(x)
    y = c.tuple
    if y.n == 1:
        return _single(x, c)
    upper = delta_value(y.n, p, q, y.r) if is_unit_basis(y) else None
    if y.r == 1.0 and p == 1.0:
        # on l^1 the (1,q)-multi-norm is the standard q-multi-norm
        std = standard_t_norm(y, q, cfg)
        assign = np.asarray(std.witness)
        L = np.zeros((y.n, y.m), dtype=complex)
        for j, i in enumerate(assign):
            L[i, j] = phase(y.vectors[i, j]) if y.vectors[i, j] != 0 else 0
        cert = std.certification
        return NormEstimate(std.value, cert, _expand_rows(c, L, y.m),
                            upper_bound=std.value if cert is Certification.EXACT else upper,
                            info={"route": "l1-standard", "standard_route": std.info.get("route")})
    X = y.vectors
    start = np.stack([norming_functional(v, y.r) for v in X], axis=1)
    seeds = [start] + [np.asarray(s, dtype=complex)[c.origin].T for s in seeds]
    est = ratio_ascent(_pq_numerator(X, q), (y.m, y.n), conjugate_exponent(p), conjugate_exponent(y.r),
                       y.field, cfg, seeds=seeds)
    # the norming functional of the longest vector alone attains the minimum multi-norm
    norms = y.norms()
    k = int(np.argmax(norms))
    if norms[k] > est.value:
        W = np.zeros_like(start)
        W[:, k] = start[:, k]
        est = NormEstimate(float(norms[k]), Certification.LOWER, W, info={**est.info, "denominator": 1.0})
    info = dict(est.info)
    info["route"] = "ratio-ascent/" + info.get("route", "")
    return NormEstimate(est.value, est.certification, _expand_rows(c, est.witness.T, y.m), upper_bound=upper, info=info)


def max_norm(x: VectorTuple, cfg: OptimizerConfig = OptimizerConfig(), route: str = "pq",
             seeds: Sequence[np.ndarray] = (), hilbert_seed: bool = True) -> NormEstimate:
    """Maximum multi-norm: sup |sum <x_i, lambda_i>| over dual tuples with mu_{1,n}(lambda) <= 1.

    route 'pq' evaluates the (1,1)-multi-norm (the two coincide); route 'sum'
    maximizes the defining expression directly. On l^2 the dual tuple of the
    Hilbert multi-norm is added as a start, so the estimate is never below it.
    """
    if hilbert_seed and x.r == 2.0 and x.n > 1:
        seeds = [hilbert_dual_tuple(x, hilbert_norm(x, cfg)), *seeds]
    if route == "pq":
        est = pq_norm(x, 1, 1, cfg, seeds=seeds)
        est.info["max_route"] = "pq"
        return est
    if route != "sum":
        raise ValueError(f"unknown route {route!r}")
    c = canonical(x)
    if c.tuple is None:
        return _zero(x)
    y = c.tuple
    if y.n == 1:
        return _single(x, c)
    start = np.stack([norming_functional(v, y.r) for v in y.vectors], axis=1)
    extra = [np.asarray(s, dtype=complex)[c.origin].T for s in seeds]
    est = ratio_ascent(_sum_numerator(y.vectors), (y.m, y.n), INF, conjugate_exponent(y.r), y.field, cfg,
                       seeds=[start] + extra, stream=11)
    info = dict(est.info)
    info["max_route"] = "sum"
    return NormEstimate(est.value, est.certification, _expand_rows(c, est.witness.T, y.m), info=info)


def pq_value_at(x: VectorTuple, lam: np.ndarray, p: Any, q: Any, cfg: OptimizerConfig = OptimizerConfig()) -> tuple[float, float]:
    """(numerator, mu_{p,n}(lambda)) for a dual tuple given as an n x m array."""
    lam = np.asarray(lam, dtype=complex)
    c = np.sum(x.vectors * lam.conj(), axis=1)
    num = p_norm(np.abs(c), exponent(q))
    A = OperatorMatrix(lam.T, conjugate_exponent(exponent(p)), conjugate_exponent(x.r), x.field)
    return num, op_norm(A, cfg).value


# ----------------------------------------------------------------- standard t


def _std_scores(absr: np.ndarray, t: float, r: float):
    n = absr.shape[0]

    def score(A: np.ndarray) -> np.ndarray:
        onehot = (A[:, :, None] == np.arange(n)[None, None, :]).astype(float)
        S = np.einsum("bjn,nj->bn", onehot, absr)
        return np.sum(S ** (t / r), axis=1) ** (1.0 / t)

    return score


def _std_value(absr: np.ndarray, assign: np.ndarray, t: float, r: float) -> float:
    n = absr.shape[0]
    S = np.zeros(n)
    np.add.at(S, assign, absr[assign, np.arange(assign.size)])
    return float(np.sum(S ** (t / r)) ** (1.0 / t))


def _local_search(absr: np.ndarray, t: float, r: float, cfg: OptimizerConfig, starts: list[np.ndarray]) -> tuple[np.ndarray, float]:
    n, m = absr.shape
    e = t / r
    best_a, best_v = None, -1.0
    for a0 in starts:
        a = a0.copy()
        S = np.zeros(n)
        np.add.at(S, a, absr[a, np.arange(m)])
        cur = np.sum(S**e)
        improved = True
        while improved:
            improved = False
            for j in range(m):
                i0 = a[j]
                base = cur - S[i0] ** e + max(S[i0] - absr[i0, j], 0.0) ** e
                cand = base - S ** e + (S + absr[:, j]) ** e
                cand[i0] = cur
                i1 = int(np.argmax(cand))
                if cand[i1] > cur * (1 + 1e-15):
                    S[i0] = max(S[i0] - absr[i0, j], 0.0)
                    S[i1] += absr[i1, j]
                    a[j] = i1
                    cur = np.sum(S**e)
                    improved = True
        val = cur ** (1.0 / t)
        if val > best_v:
            best_a, best_v = a, val
    return best_a, float(best_v)


def standard_t_norm(x: VectorTuple, t: Any, cfg: OptimizerConfig = OptimizerConfig(), route: Optional[str] = None) -> NormEstimate:
    """Standard t-multi-norm: the best ordered partition of the coordinates.

    The witness is the assignment coordinate j -> block index (length m).
    route forces 'greedy' (only valid for t = r), 'enumerate' or 'local'.
    """
    t = exponent(t)
    r = x.r
    if t < r:
        raise InvalidExponent(f"standard t-multi-norm needs t >= r, got t = {t}, r = {r}")
    absr = np.abs(x.vectors) ** r
    n, m = absr.shape
    if route is None:
        if t == r:
            route = "greedy"
        elif count_assignments(m, n) <= cfg.brute_budget:
            route = "enumerate"
        else:
            route = "local"
    if route == "greedy":
        if t != r:
            raise ValueError("the greedy route is exact only for t = r")
        assign = np.argmax(absr, axis=0)
        value = _std_value(absr, assign, t, r)
        return NormEstimate(value, Certification.EXACT, assign, upper_bound=value, info={"route": "greedy"})
    if route == "enumerate":
        best, value, count = enumerate_partitions(m, n, _std_scores(absr, t, r), cfg, batched=True)
        assign = np.array(best)
        value = _std_value(absr, assign, t, r)
        return NormEstimate(value, Certification.EXACT, assign, upper_bound=value,
                            info={"route": "enumerate", "evaluated": count})
    if route != "local":
        raise ValueError(f"unknown route {route!r}")
    starts = [np.argmax(absr, axis=0)]
    for i in range(cfg.restarts):
        starts.append(cfg.rng(i, 5).integers(0, n, size=m))
    assign, _ = _local_search(absr, t, r, cfg, starts)
    value = _std_value(absr, assign, t, r)
    return NormEstimate(value, Certification.LOWER, assign, info={"route": "local-search"})


# ---------------------------------------------------------------------- Hilbert


def _frame_objective(X: np.ndarray):
    """sum_i |<x_i, e_i>|^2 for a frame E with columns e_i (X holds the rows x_i)."""
    XT = X.T

    def objective(E: np.ndarray) -> tuple[float, np.ndarray]:
        c = np.sum(XT * E.conj(), axis=0)
        return float(np.sum(np.abs(c) ** 2)), 2 * XT * np.conj(c)[None, :]

    return objective


def _real_plane_pair(a: np.ndarray, b: np.ndarray) -> tuple[float, np.ndarray]:
    # max over orthonormal (e1, e2) of <a,e1>^2 + <b,e2>^2 in R^2
    ac, bc = complex(a[0], a[1]), complex(b[0], b[1])
    w = ac * ac - bc * bc
    value = 0.5 * (abs(ac) ** 2 + abs(bc) ** 2 + abs(w))
    th = 0.5 * np.angle(w) if w != 0 else np.angle(ac)
    E = np.array([[math.cos(th), -math.sin(th)], [math.sin(th), math.cos(th)]], dtype=complex)
    return value, E


def hilbert_norm(x: VectorTuple, cfg: OptimizerConfig = OptimizerConfig()) -> NormEstimate:
    """Hilbert multi-norm via its dual form: the best orthonormal system paired with the x_i.

    The witness is a d x n array whose column i is e_i (zero for inactive i).
    """
    if x.r != 2.0:
        raise InvalidExponent("the Hilbert multi-norm needs r = 2")
    c = canonical(x)
    d = x.m
    if c.tuple is None:
        return NormEstimate(0.0, Certification.EXACT, np.zeros((d, x.n), dtype=complex), upper_bound=0.0,
                            info={"route": "zero"})
    y = c.tuple
    X = y.vectors
    n = y.n
    norms = y.norms()
    bessel = float(np.sqrt(np.sum(norms**2)))
    k = min(n, d)

    def finish(value_sq: float, cols: Sequence[int], E: np.ndarray, cert: Certification, route: str, ub=None) -> NormEstimate:
        W = np.zeros((d, n), dtype=complex)
        W[:, list(cols)] = E
        full = np.zeros((d, x.n), dtype=complex)
        full[:, c.origin] = W
        value = math.sqrt(max(value_sq, 0.0))
        return NormEstimate(value, cert, full, upper_bound=ub, info={"route": route})

    G = y.gram()
    off = G - np.diag(np.diag(G))
    if n <= d and np.all(np.abs(off) <= 1e-14 * max(norms.max() ** 2, 1e-300)):
        # orthogonal tuple: e_i = x_i / ||x_i|| meets the Bessel bound
        E = (X / norms[:, None]).T
        return finish(bessel**2, range(n), E, Certification.EXACT, "orthogonal", ub=bessel)
    if k == 1:
        i = int(np.argmax(norms))
        value = float(norms[i])
        return finish(value**2, [i], (X[i] / norms[i])[:, None], Certification.EXACT, "single-direction", ub=value)
    if d == 2 and y.is_real:
        best = None
        for i, j in itertools.permutations(range(n), 2):
            val, E = _real_plane_pair(X[i].real, X[j].real)
            if best is None or val > best[0] * (1 + 1e-15):
                best = (val, (i, j), E)
        val, cols, E = best
        return finish(val, cols, E, Certification.EXACT, "real-plane", ub=math.sqrt(val))
    subsets = list(itertools.combinations(range(n), k))
    if len(subsets) > SUBSET_LIMIT:
        subsets = [tuple(sorted(np.argsort(-norms, kind="stable")[:k]))]
    best = None
    for sub in subsets:
        Xs = X[list(sub)]
        start = qr_start(Xs)
        est = maximize_on_frames(_frame_objective(Xs), d, k, cfg, y.field, starts=[start], convex=True)
        if best is None or est.value > best[0]:
            best = (est.value, sub, est.witness)
    val, sub, E = best
    out = finish(val, sub, E, Certification.LOWER, "frame-ascent")
    out.info["subsets"] = len(subsets)
    return out


def hilbert_dual_tuple(x: VectorTuple, est: NormEstimate) -> np.ndarray:
    """Dual tuple lambda_i = (<x_i, e_i>/h) e_i built from a Hilbert witness.

    It has mu_{1,n} = 1 and pairs with x to the Hilbert value h, so it is a
    feasible start for the maximum multi-norm.
    """
    E = np.asarray(est.witness, dtype=complex)
    c = np.sum(x.vectors.T * E.conj(), axis=0)
    h = float(np.sqrt(np.sum(np.abs(c) ** 2)))
    if h == 0:
        return np.zeros((x.n, x.m), dtype=complex)
    return (E * (c / h)[None, :]).T


@dataclass
class MaxHilbertRatio:
    max_estimate: NormEstimate
    hilbert_estimate: NormEstimate

    @property
    def ratio(self) -> float:
        h = self.hilbert_estimate.value
        return self.max_estimate.value / h if h > 0 else 1.0


def max_hilbert_ratio(x: VectorTuple, cfg: OptimizerConfig = OptimizerConfig(),
                      seeds: Sequence[np.ndarray] = ()) -> MaxHilbertRatio:
    """Maximum and Hilbert multi-norms of one tuple, the former seeded by the latter's dual tuple."""
    hil = hilbert_norm(x, cfg)
    mx = max_norm(x, cfg, seeds=[hilbert_dual_tuple(x, hil), *seeds], hilbert_seed=False)
    return MaxHilbertRatio(mx, hil)


def qr_start(Xs: np.ndarray) -> np.ndarray:
    """Frame obtained by orthonormalizing the x_i in order."""
    from .optkernel import polar

    return polar(Xs.T)


# ------------------------------------------------------------ rate of growth


@dataclass
class PhiEstimate:
    n: int
    kind: MultiNormKind
    space: SequenceSpace
    value: NormEstimate
    predicted_exponent: Optional[float]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "kind": self.kind.label(),
            "r": self.space.r,
            "m": self.space.m,
            "field": self.space.field.value,
            "value": self.value.to_json(),
            "predicted_exponent": self.predicted_exponent,
            "predicted_value": None if self.predicted_exponent is None else self.n**self.predicted_exponent,
        }


def phi_estimate(kind: MultiNormKind, space: SequenceSpace, n: int, cfg: OptimizerConfig = OptimizerConfig(),
                 seeds: Sequence[np.ndarray] = ()) -> PhiEstimate:
    """Lower estimate of the largest level-n norm of a tuple of unit vectors.

    For (p,q) kinds the supremum over unit tuples and dual tuples is taken in
    the other order: pairing lambda_i with its norming vector gives
    sup (sum ||lambda_i||_s^q)^(1/q) / mu_{p,n}(lambda), the (q,p)-summing
    constant of the identity of l^s_m. The witness is the unit tuple.
    """
    from .classify import phi_exponent

    kind.validate(space)
    r, m = space.r, space.m
    if kind.name == "min":
        x = VectorTuple(space, np.tile(np.eye(1, m), (n, 1)))
        est = NormEstimate(1.0, Certification.EXACT, x.vectors, upper_bound=1.0, info={"route": "closed-form"})
        return PhiEstimate(n, kind, space, est, 0.0)
    if kind.name == "std":
        k = min(n, m)
        value = float(k ** (1.0 / kind.t))
        rows = np.vstack([np.eye(k, m), np.tile(np.eye(1, m), (n - k, 1))])
        est = NormEstimate(value, Certification.EXACT, rows, upper_bound=value, info={"route": "disjoint-supports"})
        return PhiEstimate(n, kind, space, est, 1.0 / kind.t if m >= n else None)
    if kind.name == "hilbert":
        p, q = 2.0, 2.0
    elif kind.name == "max":
        p, q = 1.0, 1.0
    else:
        p, q = kind.p, kind.q
    predicted = phi_exponent(p, q, r) if r > 1 else 1.0 / q
    s = conjugate_exponent(r)
    ident = OperatorMatrix(np.eye(m), s, s, space.field)
    est = summing_constant_estimate(ident, q, p, n, cfg, seeds=seeds)
    L = est.witness.T
    X = np.array([norming_functional(l, s) if np.any(l != 0) else np.eye(1, m)[0] for l in L])
    X = np.array([v / p_norm(v, r) for v in X])
    info = dict(est.info)
    info["dual_tuple"] = L
    out = NormEstimate(est.value, est.certification, X, upper_bound=None, info=info)
    return PhiEstimate(n, kind, space, out, predicted)


def evaluate(kind: MultiNormKind, x: VectorTuple, cfg: OptimizerConfig = OptimizerConfig()) -> NormEstimate:
    kind.validate(x.space)
    if kind.name == "min":
        return min_norm(x)
    if kind.name == "max":
        return max_norm(x, cfg)
    if kind.name == "pq":
        return pq_norm(x, kind.p, kind.q, cfg)
    if kind.name == "std":
        return standard_t_norm(x, kind.t, cfg)
    return hilbert_norm(x, cfg)


def value_at_witness(kind: MultiNormKind, x: VectorTuple, witness: Any, cfg: OptimizerConfig = OptimizerConfig()) -> float:
    """Recompute a multi-norm value from the witness that evaluate() emitted."""
    kind.validate(x.space)
    if kind.name == "min":
        return float(p_norm(x.vectors[int(witness)], x.r))
    if kind.name == "std":
        assign = np.asarray(witness, dtype=int)
        return _std_value(np.abs(x.vectors) ** x.r, assign, kind.t, x.r)
    if kind.name == "hilbert":
        E = np.asarray(witness, dtype=complex)
        c = np.sum(x.vectors.T * E.conj(), axis=0)
        return float(np.sqrt(np.sum(np.abs(c) ** 2)))
    p, q = (1.0, 1.0) if kind.name == "max" else (kind.p, kind.q)
    lam = np.asarray(witness, dtype=complex)
    if not np.any(lam):
        return 0.0
    num, mu_val = pq_value_at(x, lam, p, q, cfg)
    return num / mu_val


def witness_array(data: Any, shape: tuple[int, ...]) -> np.ndarray:
    """Parse a JSON witness: a real array of the given shape or one with a trailing [re, im] axis."""
    arr = np.asarray(data, dtype=float)
    if arr.shape == tuple(shape):
        return arr.astype(complex)
    if arr.shape == tuple(shape) + (2,):
        return arr[..., 0] + 1j * arr[..., 1]
    raise ValueError(f"witness has shape {arr.shape}, expected {tuple(shape)}")


@dataclass
class AxiomReport:
    """Values used to check permutation invariance (A1), scalar contraction (A2),
    zero padding (A3) and duplication (A4) on one tuple."""

    kind: str
    base: float
    permuted: float
    scaled: float
    scale: float
    padded: float
    duplicated: float
    certifications: list

    def a1(self) -> bool:
        return self.permuted == self.base

    def a2(self, tol: float = 1e-9) -> bool:
        return self.scaled <= self.scale * self.base * (1 + tol) + tol

    def a3(self) -> bool:
        return self.padded == self.base

    def a4(self, tol: float = 1e-9) -> bool:
        return abs(self.duplicated - self.base) <= tol * max(1.0, abs(self.base))

    def exact(self) -> bool:
        return all(c is Certification.EXACT for c in self.certifications)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "base": self.base,
            "permuted": self.permuted,
            "scaled": self.scaled,
            "scale_bound": self.scale * self.base,
            "padded": self.padded,
            "duplicated": self.duplicated,
            "A1": self.a1(),
            "A2": self.a2(),
            "A3": self.a3(),
            "A4": self.a4(),
            "exact_routes": self.exact(),
        }


def axiom_report(kind: MultiNormKind, x: VectorTuple, perm: Sequence[int], alpha: Sequence[complex],
                 cfg: OptimizerConfig = OptimizerConfig()) -> AxiomReport:
    ests = [evaluate(kind, y, cfg) for y in (x, x.permuted(perm), x.scaled(alpha), x.padded(), x.duplicated_last())]
    scale = float(np.max(np.abs(np.asarray(alpha))))
    return AxiomReport(kind.label(), ests[0].value, ests[1].value, ests[2].value, scale, ests[3].value,
                       ests[4].value, [e.certification for e in ests])
