"""Multi-start maximizers over l^u spheres, the torus T^n and orthonormal frames, plus brute-force oracles.

Objectives for the sphere and torus kernels are batched: they receive an (n, R)
array whose columns are candidate points and return (values of shape (R,),
gradients of shape (n, R)). Gradients of real functions of complex variables are
packed as dF/dRe + i dF/dIm, so that dF = Re sum(conj(G) * dV).
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Callable, Optional, Sequence

import numpy as np

from .spaces import INF, ScalarField, conjugate_exponent, p_norms


class Certification(str, Enum):
    EXACT = "Exact"
    LOWER = "CertifiedLowerBound"
    HEURISTIC = "Heuristic"


_RANK = {Certification.EXACT: 2, Certification.LOWER: 1, Certification.HEURISTIC: 0}


def weakest(*levels: Certification) -> Certification:
    return min(levels, key=lambda c: _RANK[c])


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class OptimizerConfig:
    restarts: int = 32
    max_iter: int = 2000
    step_tol: float = 1e-10
    value_tol: float = 1e-9
    seed: int = 0
    grid_density: int = 64
    brute_budget: int = 2_000_000
    smoothing: float = 0.0
    threads: int = 1

    def __post_init__(self) -> None:
        if self.restarts < 1 or self.max_iter < 1 or self.grid_density < 1 or self.brute_budget < 1:
            raise ValueError("restarts, max_iter, grid_density and brute_budget must be positive")
        if self.step_tol <= 0 or self.value_tol < 0:
            raise ValueError("tolerances must be positive")

    def rng(self, i: int, stream: int = 0) -> np.random.Generator:
        """Generator for restart i; depends only on (seed, stream, i)."""
        return np.random.default_rng(np.random.SeedSequence([self.seed % 2**64, stream, i]))

    def with_(self, **kw: Any) -> "OptimizerConfig":
        return replace(self, **kw)


@dataclass
class NormEstimate:
    value: float
    certification: Certification
    witness: Any = None
    upper_bound: Optional[float] = None
    info: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.value = float(self.value)
        if self.upper_bound is not None:
            self.upper_bound = float(self.upper_bound)
            if self.value > self.upper_bound * (1 + 1e-9) + 1e-12:
                # a computed lower bound above a proven upper bound means a numerical defect
                self.info.setdefault("warnings", []).append("value exceeds the analytic upper bound")

    def to_json(self) -> dict:
        out = {
            "value": self.value,
            "certification": self.certification.value,
            "witness": to_jsonable(self.witness),
        }
        if self.upper_bound is not None:
            out["upper_bound"] = self.upper_bound
        if self.info:
            out["info"] = to_jsonable(self.info)
        return out


def to_jsonable(obj: Any) -> Any:
    if isinstance(obj, np.ndarray):
        if np.iscomplexobj(obj):
            if np.all(obj.imag == 0):
                return to_jsonable(obj.real)
            return to_jsonable(np.stack([obj.real, obj.imag], axis=-1))
        return obj.tolist()
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if hasattr(obj, "to_json"):
        return obj.to_json()
    if isinstance(obj, float) and math.isinf(obj):
        return "inf"
    return obj


# ---------------------------------------------------------------- norm helpers


def phase(z: np.ndarray) -> np.ndarray:
    """z/|z|, with 0 where z = 0."""
    z = np.asarray(z)
    a = np.abs(z)
    big = a > 1e-300
    out = z / np.where(big, a, 1.0)
    if not big.all():
        # subnormal magnitudes would overflow the division
        out = np.where(big, out, np.where(a > 0, np.exp(1j * np.angle(z)), 0.0))
    return out


def norm_grad(W: np.ndarray, b: float) -> tuple[np.ndarray, np.ndarray]:
    """Column norms ||w||_b and their gradients (subgradient 0 at kinks)."""
    norms = p_norms(W, b, axis=0)
    if b == INF:
        j = np.argmax(np.abs(W), axis=0)
        Psi = np.zeros_like(W)
        cols = np.arange(W.shape[1])
        Psi[j, cols] = phase(W[j, cols])
        return norms, Psi
    if b == 1.0:
        return norms, phase(W)
    safe = np.where(norms > 0, norms, 1.0)
    Psi = phase(W) * (np.abs(W) / safe) ** (b - 1.0)
    return norms, Psi


def lmo(G: np.ndarray, u: float, current: Optional[np.ndarray] = None) -> np.ndarray:
    """Columnwise maximizer of Re<v, g> over the unit ball of l^u."""
    if u == INF:
        out = phase(G)
        if current is not None:
            out = np.where(np.abs(G) > 0, out, current)
        else:
            out = np.where(np.abs(G) > 0, out, 1.0)
        return out
    if u == 1.0:
        j = np.argmax(np.abs(G), axis=0)
        out = np.zeros_like(G)
        cols = np.arange(G.shape[1])
        ph = phase(G[j, cols])
        out[j, cols] = np.where(ph != 0, ph, 1.0)
        return out
    up = conjugate_exponent(u)
    norms = p_norms(G, up, axis=0)
    safe = np.where(norms > 0, norms, 1.0)
    out = phase(G) * (np.abs(G) / safe) ** (up - 1.0)
    if current is not None:
        out = np.where(norms[None, :] > 0, out, current)
    return out


def normalize(V: np.ndarray, u: float) -> np.ndarray:
    norms = p_norms(V, u, axis=0)
    return V / np.where(norms > 0, norms, 1.0)


def random_unit(rng: np.random.Generator, n: int, u: float, field: ScalarField) -> np.ndarray:
    v = rng.standard_normal(n)
    if field is ScalarField.COMPLEX:
        v = v + 1j * rng.standard_normal(n)
    v = v.astype(complex)
    return normalize(v[:, None], u)[:, 0]


def _project_field(V: np.ndarray, field: ScalarField) -> np.ndarray:
    return V.real.astype(complex) if field is ScalarField.REAL else V


def _pick_best(values: np.ndarray, witnesses: np.ndarray) -> int:
    """Index of the maximum value; ties broken by the lexicographically largest witness."""
    finite = np.where(np.isfinite(values), values, -np.inf)
    best = finite.max()
    idx = np.flatnonzero(finite == best)
    if idx.size == 1:
        return int(idx[0])
    keys = [tuple(np.round(np.concatenate([witnesses[:, i].real, witnesses[:, i].imag]), 14)) for i in idx]
    return int(idx[max(range(len(idx)), key=lambda k: keys[k])])


# ------------------------------------------------------------------ batched ascent

BatchObjective = Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]]


def _ascend(
    objective: BatchObjective,
    V: np.ndarray,
    retract: Callable[[np.ndarray], np.ndarray],
    lmo_step: Optional[Callable[[np.ndarray, np.ndarray], np.ndarray]],
    direction: Callable[[np.ndarray, np.ndarray], np.ndarray],
    cfg: OptimizerConfig,
    value_tol: Optional[float] = None,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Monotone ascent on all columns at once; returns (points, values, iterations)."""
    vtol = cfg.value_tol if value_tol is None else value_tol
    vals, G = objective(V)
    vals = np.asarray(vals, dtype=float).copy()
    bad = ~np.isfinite(vals)
    vals[bad] = -np.inf
    active = ~bad
    iters = np.zeros(V.shape[1], dtype=int)
    for _ in range(cfg.max_iter):
        if not active.any():
            break
        idx = np.flatnonzero(active)
        Va, Ga, va = V[:, idx], G[:, idx], vals[idx]
        newV = Va.copy()
        newG = Ga.copy()
        newv = va.copy()
        moved = np.zeros(idx.size, dtype=bool)
        if lmo_step is not None:
            Vc = lmo_step(Ga, Va)
            vc, Gc = objective(Vc)
            ok = np.isfinite(vc) & (vc > va)
            newV[:, ok], newG[:, ok], newv[ok] = Vc[:, ok], Gc[:, ok], vc[ok]
            moved |= ok
        todo = ~moved
        if todo.any():
            D = direction(Ga[:, todo], Va[:, todo])
            sub = np.flatnonzero(todo)
            tau = 1.0
            pending = np.ones(sub.size, dtype=bool)
            for _ in range(50):
                if not pending.any():
                    break
                cols = sub[pending]
                Vt = retract(Va[:, cols] + tau * D[:, pending])
                vt, Gt = objective(Vt)
                ok = np.isfinite(vt) & (vt > va[cols])
                if ok.any():
                    acc = cols[ok]
                    newV[:, acc], newG[:, acc], newv[acc] = Vt[:, ok], Gt[:, ok], vt[ok]
                    moved[acc] = True
                    pend_idx = np.flatnonzero(pending)
                    pending[pend_idx[ok]] = False
                tau *= 0.5
        gain = (newv - va) / np.maximum(np.abs(va), 1e-300)
        step = np.sqrt(np.sum(np.abs(newV - Va) ** 2, axis=0)) / np.maximum(
            np.sqrt(np.sum(np.abs(Va) ** 2, axis=0)), 1e-300
        )
        V[:, idx], G[:, idx], vals[idx] = newV, newG, newv
        iters[idx] += 1
        done = (~moved) | (gain < vtol) | (step < cfg.step_tol)
        active[idx[done]] = False
    return V, vals, iters


def _tangent_direction(G: np.ndarray, V: np.ndarray) -> np.ndarray:
    gn = np.sqrt(np.sum(np.abs(G) ** 2, axis=0))
    vn = np.sqrt(np.sum(np.abs(V) ** 2, axis=0))
    return G / np.where(gn > 0, gn, 1.0) * vn


def maximize_on_sphere(
    objective: BatchObjective,
    u: float,
    n: int,
    cfg: OptimizerConfig,
    field: ScalarField = ScalarField.COMPLEX,
    starts: Optional[Sequence[np.ndarray]] = None,
    convex: bool = False,
    restarts: Optional[int] = None,
    stream: int = 0,
) -> NormEstimate:
    """Maximize a (batched) objective over the unit sphere of l^u_n.

    Each iteration first tries the linear-maximization step v <- argmax Re<v, grad>
    (monotone for convex objectives when convex=True), otherwise a normalized
    gradient step with backtracking from 1.0.
    """
    field = ScalarField.parse(field)
    R = cfg.restarts if restarts is None else restarts
    cols = [np.asarray(s, dtype=complex).ravel() for s in (starts or [])]
    cols += [random_unit(cfg.rng(i, stream), n, u, field) for i in range(R)]
    if not cols:
        raise ValueError("no starting points")
    V = _project_field(normalize(np.stack(cols, axis=1), u), field)

    def retract(W: np.ndarray) -> np.ndarray:
        return normalize(_project_field(W, field), u)

    def direction(G: np.ndarray, W: np.ndarray) -> np.ndarray:
        return _tangent_direction(_project_field(G, field), W)

    lmo_step = None
    if convex:
        lmo_step = lambda G, W: _project_field(lmo(_project_field(G, field), u, W), field)  # noqa: E731
    V, vals, iters = _ascend(objective, V, retract, lmo_step, direction, cfg)
    failed = int(np.sum(~np.isfinite(vals)))
    if failed == vals.size:
        raise FloatingPointError("objective was non-finite on every restart")
    k = _pick_best(vals, V)
    info = {"restart_values": vals, "iterations": int(iters.sum()), "maximizers": _near_best(vals, V)}
    if failed:
        info["nonfinite_restarts"] = failed
    return NormEstimate(vals[k], Certification.LOWER, V[:, k].copy(), info=info)


def _near_best(vals: np.ndarray, V: np.ndarray, rel: float = 1e-2, limit: int = 16) -> list[np.ndarray]:
    """Distinct columns of V within a relative gap rel of the best value, best first."""
    finite = np.where(np.isfinite(vals), vals, -np.inf)
    best = finite.max()
    out: list[np.ndarray] = []
    units: list[np.ndarray] = []
    for i in np.argsort(-finite, kind="stable"):
        if finite[i] < best - rel * abs(best) or len(out) >= limit:
            break
        v = V[:, i] / max(np.linalg.norm(V[:, i]), 1e-300)
        if all(abs(np.vdot(w, v)) < 1 - 1e-9 for w in units):
            units.append(v)
            out.append(V[:, i].copy())
    return out


# ------------------------------------------------------------------------- torus


@dataclass
class TorusResult:
    estimate: NormEstimate
    classes: list[np.ndarray]

    @property
    def value(self) -> float:
        return self.estimate.value


def align_phase(xi: np.ndarray) -> np.ndarray:
    """Gauge fix: divide by the phase of the last coordinate."""
    xi = np.asarray(xi, dtype=complex)
    last = xi[-1]
    return xi * np.conj(last) / abs(last) if abs(last) > 0 else xi


def dedupe_classes(points: Sequence[np.ndarray], tol: float = 1e-6) -> list[np.ndarray]:
    classes: list[np.ndarray] = []
    for p in points:
        a = align_phase(p)
        if classes and np.min(np.max(np.abs(np.angle(a[None, :] * np.conj(np.asarray(classes)))), axis=1)) < tol:
            continue
        classes.append(a)
    classes.sort(key=lambda c: tuple(np.round(np.angle(c), 9)))
    return classes


def maximize_on_torus(
    objective: BatchObjective,
    n: int,
    field: ScalarField,
    cfg: OptimizerConfig,
    starts: Optional[Sequence[np.ndarray]] = None,
    convex: bool = False,
    class_tol: float = 1e-9,
    stream: int = 1,
) -> TorusResult:
    """Maximize a phase-invariant objective over T^n (or {+-1}^n for real scalars)."""
    field = ScalarField.parse(field)
    if field is ScalarField.REAL and n <= 20:
        return _torus_signs(objective, n, cfg, class_tol)
    info: dict = {}
    cert = Certification.LOWER
    cols = [align_phase(np.asarray(s, dtype=complex)) for s in (starts or [])]
    if n == 1:
        cols.append(np.ones(1, dtype=complex))
    else:
        density = cfg.grid_density
        if density ** (n - 1) > cfg.brute_budget:
            density = int(math.floor(cfg.brute_budget ** (1.0 / (n - 1)) + 1e-9))
            info["warning"] = f"grid reduced to {density} points per angle by the brute-force budget"
            cert = Certification.HEURISTIC
        if density >= 2:
            cols.extend(_grid_tops(objective, n, density, cfg.restarts, field))
        for i in range(cfg.restarts):
            rng = cfg.rng(i, stream)
            if field is ScalarField.REAL:
                z = rng.choice([-1.0, 1.0], size=n).astype(complex)
            else:
                z = np.exp(1j * rng.uniform(-np.pi, np.pi, size=n))
            cols.append(z)
    X = np.stack(cols, axis=1)
    if field is ScalarField.REAL:
        X = np.sign(X.real).astype(complex)
        X[X == 0] = 1.0

    def retract(W: np.ndarray) -> np.ndarray:
        return align_phase_cols(phase_or_one(W))

    def direction(G: np.ndarray, W: np.ndarray) -> np.ndarray:
        # angular gradient dF/dtheta_k = Im(G_k conj(xi_k)); move along i xi_k
        gth = np.imag(G * np.conj(W))
        norm = np.sqrt(np.sum(gth**2, axis=0))
        gth = gth / np.where(norm > 0, norm, 1.0)
        return W * (np.exp(1j * gth) - 1.0)

    lmo_step = None
    if convex:
        lmo_step = lambda G, W: align_phase_cols(lmo(G, INF, W))  # noqa: E731
    X, vals, iters = _ascend(objective, align_phase_cols(X), retract, lmo_step, direction, cfg,
                             value_tol=cfg.value_tol * 1e-3)
    if field is ScalarField.REAL:
        X = np.sign(X.real).astype(complex)
    k = _pick_best(vals, X)
    best = vals[k]
    near = [X[:, i] for i in range(X.shape[1]) if vals[i] >= best - class_tol * max(abs(best), 1.0)]
    classes = dedupe_classes(near)
    info["iterations"] = int(iters.sum())
    est = NormEstimate(best, cert, align_phase(X[:, k]), info=info)
    return TorusResult(est, classes)


def phase_or_one(W: np.ndarray) -> np.ndarray:
    ph = phase(W)
    return np.where(ph == 0, 1.0, ph)


def align_phase_cols(X: np.ndarray) -> np.ndarray:
    last = X[-1:, :]
    a = np.abs(last)
    return X * np.where(a > 0, np.conj(last) / np.where(a > 0, a, 1.0), 1.0)


def _grid_tops(objective: BatchObjective, n: int, density: int, keep: int, field: ScalarField) -> list[np.ndarray]:
    angles = 2 * np.pi * np.arange(density) / density
    total = density ** (n - 1)
    chunk = 1 << 15
    best_vals = np.empty(0)
    best_idx = np.empty(0, dtype=np.int64)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        X = _grid_points(idx, n, density, angles)
        vals, _ = objective(X)
        vals = np.where(np.isfinite(vals), vals, -np.inf)
        best_vals = np.concatenate([best_vals, vals])
        best_idx = np.concatenate([best_idx, idx])
        if best_vals.size > 4 * keep:
            order = np.lexsort((best_idx, -best_vals))[:keep]
            best_vals, best_idx = best_vals[order], best_idx[order]
    order = np.lexsort((best_idx, -best_vals))[:keep]
    X = _grid_points(best_idx[order], n, density, angles)
    return [X[:, i] for i in range(X.shape[1])]


def _grid_points(idx: np.ndarray, n: int, density: int, angles: np.ndarray) -> np.ndarray:
    X = np.ones((n, idx.size), dtype=complex)
    rest = idx.copy()
    for k in range(n - 1):
        X[k] = np.exp(1j * angles[rest % density])
        rest //= density
    return X


def _torus_signs(objective: BatchObjective, n: int, cfg: OptimizerConfig, class_tol: float) -> TorusResult:
    # last sign fixed to +1 by the global-sign symmetry
    total = 2 ** (n - 1)
    chunk = 1 << 14
    vals_all = []
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total))
        bits = (idx[None, :] >> np.arange(n - 1)[::-1, None]) & 1
        X = np.vstack([1.0 - 2.0 * bits, np.ones((1, idx.size))]).astype(complex)
        v, _ = objective(X)
        vals_all.append(np.asarray(v, dtype=float))
    vals = np.concatenate(vals_all)
    best = vals.max()
    hits = np.flatnonzero(vals >= best - class_tol * max(abs(best), 1.0))
    classes = []
    for i in hits:
        bits = (i >> np.arange(n - 1)[::-1]) & 1
        classes.append(np.concatenate([1.0 - 2.0 * bits, [1.0]]).astype(complex))
    k = int(np.flatnonzero(vals == best)[0])
    bits = (k >> np.arange(n - 1)[::-1]) & 1
    w = np.concatenate([1.0 - 2.0 * bits, [1.0]]).astype(complex)
    est = NormEstimate(best, Certification.EXACT, w, upper_bound=best, info={"evaluated": total})
    return TorusResult(est, classes)


# ------------------------------------------------------------------------ frames


def polar(G: np.ndarray) -> np.ndarray:
    """Orthonormal-column factor U V^H of G = U S V^H."""
    U, _, Vh = np.linalg.svd(G, full_matrices=False)
    return U @ Vh


def qr_retract(W: np.ndarray) -> np.ndarray:
    Q, R = np.linalg.qr(W)
    d = np.diag(R)
    ph = np.where(np.abs(d) > 0, d / np.where(np.abs(d) > 0, np.abs(d), 1.0), 1.0)
    return Q * ph[None, :]


FrameObjective = Callable[[np.ndarray], tuple[float, np.ndarray]]


def maximize_on_frames(
    objective: FrameObjective,
    d: int,
    k: int,
    cfg: OptimizerConfig,
    field: ScalarField = ScalarField.COMPLEX,
    starts: Optional[Sequence[np.ndarray]] = None,
    convex: bool = False,
    restarts: Optional[int] = None,
    stream: int = 2,
    value_tol: Optional[float] = None,
) -> NormEstimate:
    """Maximize objective(E) over d x k matrices with orthonormal columns."""
    if k > d:
        raise ValueError(f"cannot fit {k} orthonormal vectors in dimension {d}")
    field = ScalarField.parse(field)
    vtol = cfg.value_tol if value_tol is None else value_tol
    R = cfg.restarts if restarts is None else restarts
    frames = [qr_retract(np.asarray(s, dtype=complex)) for s in (starts or [])]
    for i in range(R):
        rng = cfg.rng(i, stream)
        Z = rng.standard_normal((d, k))
        if field is ScalarField.COMPLEX:
            Z = Z + 1j * rng.standard_normal((d, k))
        frames.append(qr_retract(Z.astype(complex)))
    best_val, best_E, total_iter = -np.inf, None, 0
    values = []
    for E in frames:
        if field is ScalarField.REAL:
            E = qr_retract(E.real.astype(complex))
        val, G = objective(E)
        for _ in range(cfg.max_iter):
            total_iter += 1
            moved = False
            Gf = G.real.astype(complex) if field is ScalarField.REAL else G
            if convex:
                Ec = polar(Gf)
                vc, Gc = objective(Ec)
                if vc > val:
                    gain = (vc - val) / max(abs(val), 1e-300)
                    step = np.linalg.norm(Ec - E)
                    E, val, G, moved = Ec, vc, Gc, True
                    if gain < vtol or step < cfg.step_tol:
                        break
                    continue
            # Riemannian gradient step with QR retraction
            sym = E.conj().T @ Gf
            T = Gf - E @ (sym + sym.conj().T) / 2
            tn = np.linalg.norm(T)
            if tn == 0:
                break
            tau = 1.0
            for _ in range(50):
                Et = qr_retract(E + tau * T / tn)
                vt, Gt = objective(Et)
                if vt > val:
                    gain = (vt - val) / max(abs(val), 1e-300)
                    step = np.linalg.norm(Et - E)
                    E, val, G, moved = Et, vt, Gt, True
                    break
                tau *= 0.5
            if not moved or gain < vtol or step < cfg.step_tol:
                break
        values.append(val)
        if val > best_val:
            best_val, best_E = val, E
    return NormEstimate(best_val, Certification.LOWER, best_E, info={"restart_values": values, "iterations": total_iter})


# -------------------------------------------------------------------- partitions


def count_assignments(m: int, n: int) -> int:
    return n**m


def enumerate_partitions(
    m: int,
    n: int,
    score: Callable[[np.ndarray], Any],
    cfg: OptimizerConfig,
    batched: bool = False,
) -> tuple[tuple[int, ...], float, int]:
    """Exhaustive maximization over all maps {0..m-1} -> {0..n-1}.

    Returns (best assignment, best value, number of assignments evaluated).
    The first maximizer in lexicographic order wins ties.
    """
    total = count_assignments(m, n)
    if total > cfg.brute_budget:
        raise BudgetExceeded(f"{n}^{m} = {total} assignments exceed the budget {cfg.brute_budget}; use local search")
    if not batched:
        best_val, best = -np.inf, None
        for assign in itertools.product(range(n), repeat=m):
            val = float(score(np.array(assign)))
            if val > best_val:
                best_val, best = val, assign
        return tuple(int(a) for a in best), best_val, total
    chunk = 1 << 15
    best_val, best = -np.inf, None
    powers = n ** np.arange(m - 1, -1, -1, dtype=np.int64)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        A = (idx[:, None] // powers[None, :]) % n
        vals = np.asarray(score(A), dtype=float)
        j = int(np.argmax(vals))
        if vals[j] > best_val:
            best_val, best = float(vals[j]), A[j]
    return tuple(int(a) for a in best), best_val, total


def grid_warning(msg: str) -> None:
    warnings.warn(msg, RuntimeWarning, stacklevel=2)
