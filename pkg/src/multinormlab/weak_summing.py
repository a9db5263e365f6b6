"""Weak p-summing norms, operator norms l^u_n -> l^s_m and (q,p)-summing constants."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Callable, Optional, Sequence

import numpy as np
from scipy.optimize import minimize

from .optkernel import (
    Certification,
    NormEstimate,
    OptimizerConfig,
    maximize_on_sphere,
    maximize_on_torus,
    norm_grad,
    phase,
    weakest,
)
from .spaces import INF, ScalarField, VectorTuple, conjugate_exponent, exponent, inv, p_norm, p_norms

DIAG_TOL = 1e-14
SIGN_ENUM_MAX = 20


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """An m x n matrix viewed as a map l^u_n -> l^s_m."""

    entries: np.ndarray
    from_exp: float
    to_exp: float
    field: ScalarField = ScalarField.COMPLEX

    def __post_init__(self) -> None:
        A = np.array(self.entries, dtype=complex)
        if A.ndim != 2:
            raise ValueError("operator entries must be a 2-d array")
        field = ScalarField.parse(self.field)
        if field is ScalarField.REAL and np.any(A.imag != 0):
            raise ValueError("real operator with complex entries")
        object.__setattr__(self, "entries", A)
        object.__setattr__(self, "from_exp", exponent(self.from_exp))
        object.__setattr__(self, "to_exp", exponent(self.to_exp))
        object.__setattr__(self, "field", field)

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape


def is_diagonal(A: np.ndarray) -> bool:
    fro = np.linalg.norm(A)
    if fro == 0:
        return True
    off = A.copy()
    k = min(A.shape)
    off[np.arange(k), np.arange(k)] = 0
    return bool(np.all(np.abs(off) < DIAG_TOL * fro))


def op_route(shape: tuple[int, int], u: float, s: float, field: ScalarField, diagonal: bool = False) -> str:
    """Name of the evaluation route op_norm takes for these exponents."""
    n = shape[1]
    if diagonal:
        return "diag-holder" if u > s else "diag-max"
    if u == 2.0 and s == 2.0:
        return "svd"
    if u == 1.0:
        return "columns"
    if s == INF:
        return "rows"
    if u == INF and field is ScalarField.REAL and n <= SIGN_ENUM_MAX:
        return "signs"
    if u == INF:
        return "torus"
    return "sphere"


EXACT_ROUTES = {"diag-holder", "diag-max", "svd", "columns", "rows", "signs"}


def _norm_objective(A: np.ndarray, s: float) -> Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]]:
    AH = A.conj().T

    def objective(V: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        norms, Psi = norm_grad(A @ V, s)
        return norms, AH @ Psi

    return objective


def _exact(value: float, witness: np.ndarray, route: str) -> NormEstimate:
    return NormEstimate(value, Certification.EXACT, witness, upper_bound=value, info={"route": route})


def op_norm(
    A: OperatorMatrix | np.ndarray,
    cfg: OptimizerConfig = OptimizerConfig(),
    u: Optional[float] = None,
    s: Optional[float] = None,
    field: Optional[ScalarField] = None,
    starts: Optional[Sequence[np.ndarray]] = None,
    restarts: Optional[int] = None,
) -> NormEstimate:
    """sup{||A v||_s : ||v||_u <= 1}; closed forms where available, otherwise multi-start ascent."""
    if not isinstance(A, OperatorMatrix):
        A = OperatorMatrix(A, u, s, field or ScalarField.COMPLEX)
    M, u, s, fld = A.entries, A.from_exp, A.to_exp, A.field
    m, n = M.shape
    diagonal = is_diagonal(M)
    route = op_route((m, n), u, s, fld, diagonal)
    if route == "diag-holder":
        alpha = np.zeros(n, dtype=complex)
        k = min(m, n)
        alpha[:k] = np.diag(M)[:k]
        t = 1.0 / (inv(s) - inv(u))
        value = p_norm(alpha, t)
        if value == 0:
            return _exact(0.0, np.eye(n, dtype=complex)[:, 0], route)
        w = (np.abs(alpha) / value) ** (t * inv(u)) if u != INF else np.ones(n)
        w = w.astype(complex)
        return _exact(value, w / p_norm(w, u), route)
    if route == "diag-max":
        d = np.abs(np.diag(M))
        j = int(np.argmax(d)) if d.size else 0
        return _exact(float(d.max()) if d.size else 0.0, np.eye(n, dtype=complex)[:, j], route)
    if route == "svd":
        U, S, Vh = np.linalg.svd(M)
        v = Vh[0].conj() if Vh.size else np.zeros(n, dtype=complex)
        if fld is ScalarField.REAL:
            v = v.real.astype(complex)
        return _exact(float(S[0]) if S.size else 0.0, v, route)
    if route == "columns":
        norms = p_norms(M, s, axis=0)
        j = int(np.argmax(norms))
        return _exact(float(norms[j]), np.eye(n, dtype=complex)[:, j], route)
    if route == "rows":
        up = conjugate_exponent(u)
        norms = p_norms(M, up, axis=1)
        i = int(np.argmax(norms))
        from .optkernel import lmo

        v = lmo(M[i].conj()[:, None], u)[:, 0]
        if fld is ScalarField.REAL:
            v = v.real.astype(complex)
        return _exact(float(norms[i]), v, route)
    objective = _norm_objective(M, s)
    basis = [np.eye(n, dtype=complex)[:, j] for j in range(n)]
    if route in ("signs", "torus"):
        res = maximize_on_torus(objective, n, fld, cfg, starts=list(starts or []), convex=True)
        est = res.estimate
        est.info.update({"route": route, "maximizer_classes": res.classes})
        if route == "signs":
            est.info["maximizers"] = res.classes
        else:
            est.info["maximizers"] = res.classes[:64]
        return est
    est = maximize_on_sphere(
        objective, u, n, cfg, fld, starts=list(starts or []) + basis, convex=True, restarts=restarts
    )
    est.info["route"] = route
    return est


def sphere_maximizers(est: NormEstimate, rel: float = 1e-3, limit: int = 16) -> list[np.ndarray]:
    """Distinct near-optimal points recorded by a sphere/torus run, best first."""
    if "maximizers" in est.info:
        return list(est.info["maximizers"])[:limit]
    out = [np.asarray(est.witness)]
    return out


def mu(x: VectorTuple, p: Any, cfg: OptimizerConfig = OptimizerConfig(), starts=None) -> NormEstimate:
    """Weak p-summing norm: the norm of zeta -> sum zeta_i x_i from l^{p'}_n to l^r_m."""
    p = exponent(p)
    if p == INF:
        raise ValueError("p must be finite")
    A = OperatorMatrix(x.matrix(), conjugate_exponent(p), x.r, x.field)
    est = op_norm(A, cfg, starts=starts)
    return est


def mu_orthogonal_closed_form(norms: Sequence[float], p: Any) -> float:
    """mu_{p,n} of an orthogonal tuple in a Hilbert space with the given vector norms."""
    p = exponent(p)
    if p == INF:
        raise ValueError("p must be finite")
    a = np.abs(np.asarray(norms, dtype=float))
    if p >= 2:
        return float(a.max())
    if p == 1:
        return float(np.sqrt(np.sum(a**2)))
    t = 1.0 / (1.0 / p - 0.5)
    return p_norm(a, t)


# -------------------------------------------------------------------- ratio engine


class Denominator:
    """mu(Z) = ||Z : l^a_n -> l^b_m|| together with smooth upper surrogates.

    The surrogate is an l^beta aggregate of the pieces whose maximum is the
    operator norm (singular values, column or row norms, or ||Z v|| over a bundle
    of known maximizers v); it tends to mu(Z) as beta grows.
    """

    def __init__(self, shape: tuple[int, int], a: float, b: float, field: ScalarField, cfg: OptimizerConfig):
        self.m, self.n = shape
        self.a, self.b, self.field, self.cfg = a, b, field, cfg
        self.route = op_route(shape, a, b, field)
        if self.route == "signs" and self.n > 12:
            self.smooth_kind = "bundle"
        elif self.route in ("svd", "columns", "rows"):
            self.smooth_kind = self.route
        elif self.route == "signs":
            self.smooth_kind = "signs"
        else:
            self.smooth_kind = "bundle"
        self.exact_route = self.route in EXACT_ROUTES
        if self.smooth_kind == "signs":
            from .spaces import sign_patterns

            pats = sign_patterns(self.n - 1) if self.n > 1 else np.zeros((1, 0))
            self.vectors = np.hstack([pats, np.ones((pats.shape[0], 1))]).T.astype(complex)
        else:
            self.vectors = np.zeros((self.n, 0), dtype=complex)

    def add(self, points: Sequence[np.ndarray]) -> None:
        if self.smooth_kind != "bundle":
            return
        for v in points:
            v = np.asarray(v, dtype=complex).ravel()
            if self.vectors.shape[1]:
                nv = v / max(np.linalg.norm(v), 1e-300)
                existing = self.vectors / np.maximum(np.linalg.norm(self.vectors, axis=0), 1e-300)
                if np.max(np.abs(existing.conj().T @ nv)) > 1 - 1e-12:
                    continue
            self.vectors = np.hstack([self.vectors, v[:, None]])
        if self.vectors.shape[1] > 256:
            self.vectors = self.vectors[:, -256:]

    def exact(self, Z: np.ndarray, restarts: Optional[int] = None) -> NormEstimate:
        starts = [self.vectors[:, k] for k in range(self.vectors.shape[1])] if self.smooth_kind == "bundle" else []
        if restarts is not None and len(starts) > 8:
            # cheap checks ascend only from the best bundle points
            scores = np.linalg.norm(np.abs(Z @ self.vectors), ord=self.b, axis=0)
            starts = [starts[k] for k in np.argsort(-scores)[:8]]
        cfg = self.cfg if restarts is None else self.cfg.with_(restarts=max(restarts, 1))
        est = op_norm(OperatorMatrix(Z, self.a, self.b, self.field), cfg, starts=starts, restarts=restarts)
        if self.smooth_kind == "bundle":
            pts = [est.witness] + list(est.info.get("maximizers", []))[:8]
            self.add(pts)
        return est

    def pieces(self, Z: np.ndarray) -> tuple[np.ndarray, Callable[[np.ndarray], np.ndarray]]:
        """Piece values phi_k(Z) and a map from weights w_k to sum_k w_k grad phi_k."""
        kind = self.smooth_kind
        if kind == "svd":
            U, S, Vh = np.linalg.svd(Z, full_matrices=False)
            return S, lambda w: (U * w[None, :]) @ Vh
        if kind == "columns":
            norms, Psi = norm_grad(Z, self.b)
            return norms, lambda w: Psi * w[None, :]
        if kind == "rows":
            norms, Psi = norm_grad(Z.T, conjugate_exponent(self.a))
            return norms, lambda w: (Psi * w[None, :]).T
        V = self.vectors
        if V.shape[1] == 0:
            raise RuntimeError("empty maximizer bundle")
        norms, Psi = norm_grad(Z @ V, self.b)
        return norms, lambda w: (Psi * w[None, :]) @ V.conj().T

    def smooth(self, Z: np.ndarray, beta: float) -> tuple[float, np.ndarray, float]:
        """(surrogate value, its gradient, max piece)."""
        phi, grad_of = self.pieces(Z)
        top = float(phi.max())
        if top <= 0:
            return 0.0, np.zeros_like(Z), 0.0
        rel = phi / top
        agg = float(np.sum(rel**beta))
        val = top * agg ** (1.0 / beta)
        w = (phi / val) ** (beta - 1.0)
        return val, grad_of(w), top


NumerFn = Callable[[np.ndarray], tuple[float, np.ndarray]]


def _pack(Z: np.ndarray, real: bool) -> np.ndarray:
    return Z.real.ravel().copy() if real else np.concatenate([Z.real.ravel(), Z.imag.ravel()])


def _unpack(z: np.ndarray, shape: tuple[int, int], real: bool) -> np.ndarray:
    k = shape[0] * shape[1]
    if real:
        return z.reshape(shape).astype(complex)
    return (z[:k] + 1j * z[k:]).reshape(shape)


BETAS_COARSE = (4.0, 16.0, 64.0)
BETAS_FINE = (256.0, 1024.0, 4096.0, 16384.0, 65536.0)


def ratio_ascent(
    numer: NumerFn,
    shape: tuple[int, int],
    a: float,
    b: float,
    field: ScalarField,
    cfg: OptimizerConfig,
    seeds: Sequence[np.ndarray] = (),
    stream: int = 7,
    polish: int = 4,
) -> NormEstimate:
    """Maximize numer(Z) / ||Z : l^a -> l^b|| over nonzero m x n matrices Z.

    numer must be absolutely homogeneous of degree one. Each restart climbs a
    sequence of smoothed problems with growing beta (L-BFGS on the log ratio);
    the best few restarts are continued to large beta. The returned witness is
    scaled to denominator 1 and the value is numer(witness), so it is a feasible
    point of the constrained problem. Certification is CertifiedLowerBound when
    the denominator is evaluated by an exact route, Heuristic otherwise.
    """
    real = field is ScalarField.REAL
    polish = min(polish, cfg.restarts - 1)
    den = Denominator(shape, a, b, field, cfg)
    inner_cfg = cfg.with_(restarts=min(cfg.restarts, 4), max_iter=min(cfg.max_iter, 300),
                          value_tol=max(cfg.value_tol, 1e-8), grid_density=1)
    inner_den = Denominator(shape, a, b, field, inner_cfg)

    def true_ratio(Z: np.ndarray, d: Denominator, restarts: Optional[int] = None) -> tuple[float, float]:
        f, _ = numer(Z)
        est = d.exact(Z, restarts=restarts)
        return (f / est.value if est.value > 0 else 0.0), est.value

    def run_stage(Z: np.ndarray, beta: float, d: Denominator) -> np.ndarray:
        scale = np.linalg.norm(Z)
        Z = Z / scale

        def fun(z: np.ndarray) -> tuple[float, np.ndarray]:
            W = _unpack(z, shape, real)
            f, gf = numer(W)
            mval, gm, _ = d.smooth(W, beta)
            if not (f > 0 and mval > 0 and np.isfinite(f) and np.isfinite(mval)):
                return 1e300, np.zeros_like(z)
            G = gf / f - gm / mval
            return -(math.log(f) - math.log(mval)), -_pack(G, real)

        res = minimize(fun, _pack(Z, real), jac=True, method="L-BFGS-B",
                       options={"maxiter": max(50, cfg.max_iter // 10), "gtol": 1e-12, "ftol": 1e-15})
        W = _unpack(res.x, shape, real)
        nrm = np.linalg.norm(W)
        return W / nrm if nrm > 0 else Z

    def climb(Z: np.ndarray, betas: Sequence[float], d: Denominator, pool: list) -> tuple[float, np.ndarray]:
        best_Z, best_r = Z, -1.0
        for beta in betas:
            for _ in range(4):
                if d.smooth_kind == "bundle" and d.vectors.shape[1] == 0:
                    d.exact(Z, restarts=2)
                Z = run_stage(Z, beta, d)
                before = d.vectors.shape[1]
                r, _ = true_ratio(Z, d, restarts=2)
                if d.smooth_kind != "bundle" or d.vectors.shape[1] == before:
                    break
            pool.append((r, Z))
            if r > best_r:
                best_Z, best_r = Z, r
        return best_r, best_Z

    seed_list = [np.asarray(s, dtype=complex).reshape(shape) for s in seeds]
    starts = list(seed_list)
    for i in range(cfg.restarts):
        rng = cfg.rng(i, stream)
        Z = rng.standard_normal(shape)
        if not real:
            Z = Z + 1j * rng.standard_normal(shape)
        starts.append(Z.astype(complex))
    pool: list = []
    finals = []
    for Z0 in starts:
        if real:
            Z0 = Z0.real.astype(complex)
        if np.linalg.norm(Z0) == 0 or numer(Z0)[0] <= 0:
            continue
        Z0 = Z0 / np.linalg.norm(Z0)
        if inner_den.smooth_kind == "bundle" and inner_den.vectors.shape[1] == 0:
            inner_den.exact(Z0, restarts=2)
        r0, _ = true_ratio(Z0, inner_den, restarts=2)
        pool.append((r0, Z0))
        finals.append(climb(Z0, BETAS_COARSE, inner_den, pool))
    if not finals:
        return NormEstimate(0.0, Certification.EXACT, np.zeros(shape, dtype=complex), upper_bound=0.0,
                            info={"route": den.route})
    finals.sort(key=lambda t: -t[0])
    for br, Z in finals[: max(1, polish)]:
        climb(Z, BETAS_FINE, inner_den, pool)
    # certify the most promising points with the full budget
    den.add(list(inner_den.vectors.T))
    pool.sort(key=lambda t: -t[0])
    chosen: list[np.ndarray] = [Z / np.linalg.norm(Z) for Z in seed_list if numer(Z)[0] > 0]
    for _, Z in pool:
        if len(chosen) >= len(seed_list) + polish + min(4, cfg.restarts):
            break
        if all(np.linalg.norm(Z - W) > 1e-9 for W in chosen):
            chosen.append(Z)
    best = None
    for Z in chosen:
        f, _ = numer(Z)
        est = den.exact(Z)
        val = f / est.value if est.value > 0 else 0.0
        if best is None or val > best[0]:
            best = (val, Z, est)
    val, Z, est = best
    cert = Certification.LOWER if den.exact_route else Certification.HEURISTIC
    W = Z / est.value
    return NormEstimate(val, cert, W, info={"route": den.route, "denominator": est.value,
                                            "restart_values": [t[0] for t in finals]})


# --------------------------------------------------------------- summing constants


def _summing_numerator(T: np.ndarray, s: float, q: float) -> NumerFn:
    TH = T.conj().T

    def numer(X: np.ndarray) -> tuple[float, np.ndarray]:
        norms, Psi = norm_grad(T @ X, s)
        f = p_norm(norms, q)
        if f == 0:
            return 0.0, np.zeros_like(X)
        w = (norms / f) ** (q - 1.0)
        return f, (TH @ Psi) * w[None, :]

    return numer


def lorentz_norm_grad(W: np.ndarray, lp: float, lq: float) -> tuple[np.ndarray, np.ndarray]:
    """Column Lorentz norms ||w||_{lp,lq} and their gradients, ranks fixed by a stable sort."""
    a = np.abs(W)
    m = W.shape[0]
    order = np.argsort(-a, axis=0, kind="stable")
    rank = np.empty_like(order)
    np.put_along_axis(rank, order, np.arange(m)[:, None].repeat(W.shape[1], axis=1), axis=0)
    w = (rank + 1.0) ** (lq / lp - 1.0)
    norms = np.sum(w * a**lq, axis=0) ** (1.0 / lq)
    safe = np.where(norms > 0, norms, 1.0)
    Psi = phase(W) * w * (a / safe) ** (lq - 1.0)
    return norms, Psi


def _lorentz_numerator(T: np.ndarray, lp: float, lq: float, q: float) -> NumerFn:
    TH = T.conj().T

    def numer(X: np.ndarray) -> tuple[float, np.ndarray]:
        norms, Psi = lorentz_norm_grad(T @ X, lp, lq)
        f = p_norm(norms, q)
        if f == 0:
            return 0.0, np.zeros_like(X)
        w = (norms / f) ** (q - 1.0)
        return f, (TH @ Psi) * w[None, :]

    return numer


def summing_constant_estimate(
    A: OperatorMatrix,
    q: Any,
    p: Any,
    k: int,
    cfg: OptimizerConfig = OptimizerConfig(),
    seeds: Sequence[np.ndarray] = (),
    lorentz_target: Optional[tuple[float, float]] = None,
) -> NormEstimate:
    """Lower estimate of sup{(sum ||T x_i||^q)^(1/q) : mu_{p,k}(x) <= 1} for T = A: l^u_n -> l^s_m.

    With lorentz_target = (a, b) the target norm is the Lorentz norm l^{a,b}_m
    instead of l^s_m. The witness is the n x k matrix whose columns are the x_i,
    scaled to mu = 1.
    """
    p, q = exponent(p), exponent(q)
    if not (1 <= p <= q < INF):
        raise ValueError("need 1 <= p <= q < inf")
    T = A.entries
    m, n = T.shape
    if np.linalg.norm(T) == 0:
        return NormEstimate(0.0, Certification.EXACT, np.zeros((n, k), dtype=complex), upper_bound=0.0)
    if lorentz_target is None:
        numer = _summing_numerator(T, A.to_exp, q)
    else:
        lp, lq = (exponent(v) for v in lorentz_target)
        numer = _lorentz_numerator(T, lp, lq, q)
    seeds = list(seeds)
    if A.from_exp == INF:
        seeds += _sign_seeds(n, k, cfg)
    est = ratio_ascent(numer, (n, k), conjugate_exponent(p), A.from_exp, A.field, cfg, seeds=seeds)
    return est


def _sign_seeds(n: int, k: int, cfg: OptimizerConfig, count: int = 4) -> list[np.ndarray]:
    """Starts built from sign vectors, the extreme points of the l^inf ball.

    Lorentz targets are not smooth where entries tie, and such points are
    where sign vectors land; gradient steps from generic starts stall next to them.
    """
    out = []
    first = np.zeros((n, k))
    first[:, 0] = 1.0
    out.append(first)
    # distinct Walsh columns, as many as fit
    cols = [np.array([1.0 if bin(i & j).count("1") % 2 == 0 else -1.0 for i in range(n)]) for j in range(min(k, n))]
    W = np.zeros((n, k))
    for j, c in enumerate(cols):
        W[:, j] = c
    out.append(W)
    for i in range(count):
        out.append(cfg.rng(i, 31).choice([-1.0, 1.0], size=(n, k)))
    return [o.astype(complex) for o in out]


def summing_constant_family(
    A: OperatorMatrix,
    qs: Sequence[float],
    p: Any,
    k: int,
    cfg: OptimizerConfig = OptimizerConfig(),
) -> list[NormEstimate]:
    """Estimates for several q with every run seeded by the others' witnesses.

    Cross-seeding makes each estimate at least the value of its objective at the
    other witnesses, which keeps the computed constants mutually consistent
    (for instance under the interpolation inequality in q).
    """
    first = [summing_constant_estimate(A, q, p, k, cfg) for q in qs]
    seeds = [e.witness for e in first if e.witness is not None]
    out = []
    for q, e in zip(qs, first):
        again = summing_constant_estimate(A, q, p, k, cfg.with_(restarts=1), seeds=seeds)
        out.append(again if again.value > e.value else e)
    return out


def interpolation_holds(pi_q: float, pi_q1: float, pi_q2: float, q: float, q1: float, q2: float, slack: float = 1e-3) -> bool:
    """pi_q <= pi_q1^(1-theta) pi_q2^theta (1 + slack) with 1/q = (1-theta)/q1 + theta/q2."""
    theta = (1 / q1 - 1 / q) / (1 / q1 - 1 / q2)
    return pi_q <= pi_q1 ** (1 - theta) * pi_q2**theta * (1 + slack)
