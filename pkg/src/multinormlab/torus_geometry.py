"""Maximizing ||xi_1 y_1 + ... + xi_n y_n|| over the torus in a Hilbert space, extreme points and c_n.

For three vectors the squared norm is sum ||y_i||^2 + 2 F(r, s, t) with
F = a cos r + b cos s + c cos t, where a, b, c are the moduli of <y1,y2>,
<y2,y3>, <y3,y1> and r + s + t is pinned to the sum M of their arguments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from .optkernel import Certification, NormEstimate, OptimizerConfig, align_phase, dedupe_classes, maximize_on_torus
from .spaces import ScalarField, VectorTuple, inner

TWO_PI = 2 * math.pi
ANGLE_TOL = 1e-9
BISECT_STEPS = 200


class RootFindingError(RuntimeError):
    pass


def wrap(angle: float) -> float:
    """Angle in (-pi, pi]."""
    a = math.remainder(angle, TWO_PI)
    return math.pi if a == -math.pi else a


@dataclass(frozen=True)
class TriangleData:
    a: float
    b: float
    c: float
    M: float

    def __post_init__(self) -> None:
        if min(self.a, self.b, self.c) < 0:
            raise ValueError("a, b, c must be nonnegative")
        object.__setattr__(self, "M", float(self.M) % TWO_PI)

    @classmethod
    def from_triple(cls, y1, y2, y3) -> "TriangleData":
        g12, g23, g31 = inner(y1, y2), inner(y2, y3), inner(y3, y1)
        M = sum(np.angle(g) for g in (g12, g23, g31) if g != 0)
        return cls(abs(g12), abs(g23), abs(g31), M)

    def F(self, r: float, s: float, t: float) -> float:
        return self.a * math.cos(r) + self.b * math.cos(s) + self.c * math.cos(t)


@dataclass
class MaxFResult:
    triples: list[tuple[float, float, float]]
    value: float
    unique_up_to_listed: bool = True
    note: str = ""


def _triangle_angles(x: float, y: float, z: float) -> Optional[tuple[float, float, float]]:
    """Angles opposite sides x, y, z if they form a nondegenerate triangle."""
    if not (x < y + z and y < x + z and z < x + y):
        return None
    A = math.acos(max(-1.0, min(1.0, (y * y + z * z - x * x) / (2 * y * z))))
    B = math.acos(max(-1.0, min(1.0, (x * x + z * z - y * y) / (2 * x * z))))
    return A, B, math.pi - A - B


def _is_angle(M: float, target: float) -> bool:
    return abs(wrap(M - target)) <= ANGLE_TOL


def _solve_sorted(a: float, b: float, c: float, M: float) -> tuple[float, float, float]:
    """Maximizer for 0 < a <= b <= c and 0 < M < pi."""
    p, q = math.asin(a / b), math.asin(a / c)

    def angles(h: float, obtuse: bool) -> tuple[float, float, float]:
        r = math.asin(min(h / a, 1.0))
        if obtuse:
            r = math.pi - r
        return r, math.asin(min(h / b, 1.0)), math.asin(min(h / c, 1.0))

    obtuse = M > math.pi / 2 + p + q
    # g(h) - M changes sign on [0, a]: acute branch from -M to pi/2+p+q-M, obtuse from pi-M to pi/2+p+q-M
    lo, hi = 0.0, a
    g = lambda h: sum(angles(h, obtuse)) - M  # noqa: E731
    glo = g(lo)
    for _ in range(BISECT_STEPS):
        mid = 0.5 * (lo + hi)
        gm = g(mid)
        if (gm > 0) == (glo > 0):
            lo, glo = mid, gm
        else:
            hi = mid
        if hi - lo <= 1e-15 * a:
            break
    h = 0.5 * (lo + hi)
    r, s, t = angles(h, obtuse)
    if abs(r + s + t - M) > 1e-9:
        raise RootFindingError(f"bisection did not meet the angle constraint (residual {r + s + t - M:.3e})")
    return r, s, t


def maximize_F(data: TriangleData) -> MaxFResult:
    """All maximizers (mod 2 pi) of a cos r + b cos s + c cos t subject to r + s + t = M (mod 2 pi)."""
    coef = [data.a, data.b, data.c]
    M = data.M
    zeros = [i for i in range(3) if coef[i] == 0]
    if len(zeros) == 3:
        return MaxFResult([(0.0, 0.0, 0.0)], 0.0, False, "all coefficients vanish; every triple maximizes")
    if zeros:
        # the free angle absorbs the constraint
        free = zeros[0]
        tri = [0.0, 0.0, 0.0]
        tri[free] = wrap(M)
        note = "one coefficient vanishes" if len(zeros) == 1 else "two coefficients vanish; maximizers form a family"
        return MaxFResult([tuple(tri)], sum(coef), len(zeros) == 1, note)
    if _is_angle(M, 0.0):
        return MaxFResult([(0.0, 0.0, 0.0)], sum(coef))
    order = sorted(range(3), key=lambda i: coef[i])
    a, b, c = (coef[i] for i in order)

    def unsort(vals: Sequence[float]) -> tuple[float, float, float]:
        out = [0.0, 0.0, 0.0]
        for k, i in enumerate(order):
            out[i] = wrap(vals[k])
        return tuple(out)

    if _is_angle(M, math.pi):
        ang = _triangle_angles(1 / data.a, 1 / data.b, 1 / data.c)
        if ang is not None:
            A, B, C = ang
            value = data.F(A, B, C)
            return MaxFResult([(A, B, C), (-A, -B, -C)], value)
        tri = unsort([math.pi, 0.0, 0.0])
        return MaxFResult([tri], -a + b + c)
    Mw = wrap(M)
    sign = 1.0 if Mw > 0 else -1.0
    r, s, t = _solve_sorted(a, b, c, abs(Mw))
    tri = unsort([sign * r, sign * s, sign * t])
    value = data.F(*tri)
    if value <= max(coef) * (1 - 1e-12):
        raise RootFindingError("maximizer failed the value check F > max(a, b, c)")
    return MaxFResult([tri], value)


# ----------------------------------------------------------- torus for triples


class TorusClass(str, Enum):
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"
    V = "V"
    DEGENERATE = "Degenerate"


@dataclass
class TorusClassification:
    cls: TorusClass
    maximizer_classes: list[np.ndarray]
    k_sign: list[int]
    data: TriangleData
    value: float
    note: str = ""

    def to_json(self) -> dict:
        from .optkernel import to_jsonable

        return {
            "class": self.cls.value,
            "maximizer_classes": to_jsonable(self.maximizer_classes),
            "k_sign": self.k_sign,
            "a": self.data.a,
            "b": self.data.b,
            "c": self.data.c,
            "M": self.data.M,
            "value": self.value,
            "note": self.note,
        }


def _phases_from_angles(y, r: float, s: float) -> np.ndarray:
    al = np.angle(inner(y[0], y[1]))
    be = np.angle(inner(y[1], y[2]))
    th2 = s - be
    th1 = r + th2 - al
    return np.exp(1j * np.array([th1, th2, 0.0]))


def _has_triangle(d: TriangleData) -> bool:
    return min(d.a, d.b, d.c) > 0 and _triangle_angles(1 / d.a, 1 / d.b, 1 / d.c) is not None


def classify_triple(y1, y2, y3, cfg: OptimizerConfig = OptimizerConfig(), scale_tol: float = 1e-12) -> TorusClassification:
    """Class I-V of the maximizers of ||xi_1 y1 + xi_2 y2 + xi_3 y3|| over the torus."""
    y = [np.asarray(v, dtype=complex) for v in (y1, y2, y3)]
    data = TriangleData.from_triple(*y)
    norms = [np.linalg.norm(v) for v in y]
    scale = max(norms) ** 2 if max(norms) > 0 else 1.0
    if min(data.a, data.b, data.c) <= scale_tol * scale:
        cleaned = TriangleData(*(v if v > scale_tol * scale else 0.0 for v in (data.a, data.b, data.c)), data.M)
        res = maximize_F(cleaned)
        xi = [_phases_from_angles(y, tr[0], tr[1]) for tr in res.triples]
        value = math.sqrt(max(sum(n * n for n in norms) + 2 * res.value, 0.0))
        return TorusClassification(TorusClass.DEGENERATE, xi, [0] * len(xi), cleaned, value,
                                   "an inner product vanishes; " + res.note)
    res = maximize_F(data)
    xi = [align_phase(_phases_from_angles(y, tr[0], tr[1])) for tr in res.triples]
    k = [data.a * math.sin(tr[0]) for tr in res.triples]
    value = math.sqrt(max(sum(n * n for n in norms) + 2 * res.value, 0.0))
    M = data.M
    if _is_angle(M, 0.0):
        cls = TorusClass.I
    elif _is_angle(M, math.pi):
        cls = TorusClass.II if _has_triangle(data) else TorusClass.III
    elif wrap(M) > 0:
        cls = TorusClass.IV
    else:
        cls = TorusClass.V
    signs = [0 if abs(v) <= 1e-12 * max(data.a, 1e-300) else int(np.sign(v)) for v in k]
    return TorusClassification(cls, xi, signs, data, value)


@dataclass
class Mu1Result:
    estimate: NormEstimate
    classes: list[np.ndarray]
    all_phases: bool = False

    @property
    def value(self) -> float:
        return self.estimate.value


def _hilbert_objective(Y: np.ndarray):
    A = Y.T
    AH = A.conj().T

    def objective(X: np.ndarray):
        W = A @ X
        norms = np.sqrt(np.sum(np.abs(W) ** 2, axis=0))
        safe = np.where(norms > 0, norms, 1.0)
        return norms, AH @ (W / safe)

    return objective


def mu1_maximize(y: VectorTuple, cfg: OptimizerConfig = OptimizerConfig()) -> Mu1Result:
    """mu_{1,n}(y) = max over the torus of ||sum xi_i y_i|| in l^2, with the maximizer classes."""
    if y.r != 2.0:
        raise ValueError("mu1_maximize works in l^2; use weak_summing.mu for other exponents")
    Y = y.vectors
    n = y.n
    G = y.gram()
    diag = np.real(np.diag(G))
    off = G - np.diag(np.diag(G))
    orth = bool(np.all(np.abs(off) <= 1e-14 * max(diag.max(), 1e-300)))
    if orth:
        value = float(np.sqrt(diag.sum()))
        est = NormEstimate(value, Certification.EXACT, np.ones(n, dtype=complex), upper_bound=value,
                           info={"route": "orthogonal"})
        return Mu1Result(est, [np.ones(n, dtype=complex)], all_phases=not y.is_real)
    if y.is_real:
        res = maximize_on_torus(_hilbert_objective(Y), n, ScalarField.REAL, cfg, convex=True)
        res.estimate.info["route"] = "signs"
        return Mu1Result(res.estimate, res.classes)
    if n == 1:
        v = float(np.linalg.norm(Y[0]))
        return Mu1Result(NormEstimate(v, Certification.EXACT, np.ones(1, dtype=complex), upper_bound=v), [np.ones(1, dtype=complex)])
    if n == 2:
        g = G[0, 1]
        value = float(np.sqrt(diag.sum() + 2 * abs(g)))
        xi = np.array([np.conj(g) / abs(g), 1.0], dtype=complex)
        est = NormEstimate(value, Certification.EXACT, xi, upper_bound=value, info={"route": "closed-form"})
        return Mu1Result(est, [xi])
    if n == 3:
        tc = classify_triple(*Y, cfg=cfg)
        if tc.cls is not TorusClass.DEGENERATE:
            best = max(tc.maximizer_classes, key=lambda xi: np.linalg.norm(Y.T @ xi))
            value = float(np.linalg.norm(Y.T @ best))
            est = NormEstimate(value, Certification.EXACT, best, upper_bound=value,
                               info={"route": "closed-form", "class": tc.cls.value, "closed_form_value": tc.value})
            return Mu1Result(est, tc.maximizer_classes)
    res = maximize_on_torus(_hilbert_objective(Y), n, ScalarField.COMPLEX, cfg, convex=True, class_tol=1e-10)
    polished = [polish_maximizer(G, xi) for xi in res.classes]
    best = float(max(np.linalg.norm(Y.T @ xi) for xi in polished))
    classes = dedupe_classes([xi for xi in polished if np.linalg.norm(Y.T @ xi) >= best * (1 - 1e-12)], tol=1e-9)
    est = res.estimate
    if best > est.value:
        est = NormEstimate(best, est.certification, classes[0], info=est.info)
    est.info["route"] = "torus"
    return Mu1Result(est, classes)


def polish_maximizer(G: np.ndarray, xi: np.ndarray, steps: int = 20) -> np.ndarray:
    """Newton steps on the angular stationarity equations of xi^H Gram xi.

    G[i, j] = <y_j, y_i> is the Gram matrix of the tuple; the least-squares
    step handles the flat directions of a continuum of maximizers.
    """
    A = G.T.conj()
    th = np.angle(np.asarray(xi, dtype=complex))

    def value_grad_hess(th: np.ndarray):
        z = np.exp(1j * th)
        w = A @ z
        val = float(np.real(np.vdot(z, w)))
        g = 2 * np.imag(np.conj(z) * w)
        H = 2 * np.real(np.conj(z)[:, None] * A * z[None, :])
        np.fill_diagonal(H, 0.0)
        H[np.diag_indices_from(H)] = -H.sum(axis=1)
        return val, g, H

    val, g, H = value_grad_hess(th)
    for _ in range(steps):
        gn = np.linalg.norm(g)
        if gn < 1e-15 * max(abs(val), 1e-300):
            break
        delta = np.linalg.lstsq(H, -g, rcond=1e-10)[0]
        cand = th + delta
        v2, g2, H2 = value_grad_hess(cand)
        if v2 < val * (1 - 1e-13) or np.linalg.norm(g2) >= gn:
            break
        th, val, g, H = cand, v2, g2, H2
    return align_phase(np.exp(1j * th))


# ------------------------------------------------------------------- witnesses


def real_witness_3() -> VectorTuple:
    """Three non-orthogonal vectors of R^3 on the unit sphere of mu_{1,3} that are extreme points."""
    Y = np.array([[1.0, 0, 0], [1, 1, 0], [-1, 2, 1]]) / math.sqrt(11)
    return VectorTuple.of(Y, 2, ScalarField.REAL)


def complex_witness_4() -> VectorTuple:
    """Four vectors of C^3 whose pairwise inner products all equal -1."""
    X = np.array([[1.0, 0, 0], [-1, 2, 0], [-1, -1, 3], [-1, -1, -1]])
    return VectorTuple.of(X, 2, ScalarField.COMPLEX)


def scaled_complex_witness_4() -> VectorTuple:
    """The four-vector witness scaled so that mu_{1,4} = 1 (the maximum of ||sum xi_i x_i||^2 is 24)."""
    x = complex_witness_4()
    return x.with_vectors(x.vectors / math.sqrt(24))


# -------------------------------------------------------------- extreme points


class Verdict(str, Enum):
    EXTREME = "Extreme"
    NOT_EXTREME = "NotExtremeWitness"
    INCONCLUSIVE = "Inconclusive"


@dataclass
class ExtremeTestReport:
    mu_value: NormEstimate
    maximizers: list[np.ndarray]
    nullspace_dim: int
    verdict: Verdict
    witness: Optional[np.ndarray] = None
    info: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        from .optkernel import to_jsonable

        return to_jsonable({
            "mu": self.mu_value.to_json(),
            "maximizers": self.maximizers,
            "nullspace_dim": self.nullspace_dim,
            "verdict": self.verdict.value,
            "witness": self.witness,
            "info": self.info,
        })


def _real_rows(C: np.ndarray, part: str) -> np.ndarray:
    """Real rows giving Re or Im of C z for complex z stacked as [Re z, Im z]."""
    if part == "re":
        return np.hstack([C.real, -C.imag])
    return np.hstack([C.imag, C.real])


def perturbation_system(Y: np.ndarray, maximizers: Sequence[np.ndarray], real: bool, with_phase: bool = True) -> np.ndarray:
    """Linear conditions on u = (u_1..u_n) necessary for y +- u to stay in the mu_{1,n} ball.

    Every maximizer xi gives sum_i xi_i u_i = 0; for complex scalars, moving
    the phases of xi also gives Im <xi_k u_k, w> = 0 for each k, where
    w = sum_j xi_j y_j.
    """
    n, d = Y.shape
    rows = []
    for xi in maximizers:
        xi = np.asarray(xi, dtype=complex)
        C = np.zeros((d, n * d), dtype=complex)
        for i in range(n):
            C[:, i * d:(i + 1) * d] = xi[i] * np.eye(d)
        if real:
            rows.append(C.real)
            continue
        rows.append(_real_rows(C, "re"))
        rows.append(_real_rows(C, "im"))
        if with_phase:
            w = Y.T @ xi
            P = np.zeros((n, n * d), dtype=complex)
            for k in range(n):
                P[k, k * d:(k + 1) * d] = xi[k] * np.conj(w)
            rows.append(_real_rows(P, "im"))
    return np.vstack(rows)


def nullspace(A: np.ndarray, rel_tol: float = 1e-9) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal nullspace basis (columns) and the singular values."""
    _, S, Vh = np.linalg.svd(A)
    top = S[0] if S.size else 0.0
    rank = int(np.sum(S > rel_tol * top)) if top > 0 else 0
    return Vh[rank:].conj().T, S


def _to_complex_blocks(z: np.ndarray, n: int, d: int, real: bool) -> np.ndarray:
    if real:
        return z.reshape(n, d).astype(complex)
    k = n * d
    return (z[:k] + 1j * z[k:]).reshape(n, d)


def _maximizer_samples(y: VectorTuple, res: Mu1Result, cfg: OptimizerConfig, count: int) -> list[np.ndarray]:
    pts = list(res.classes)
    if res.all_phases:
        rng = cfg.rng(0, 9)
        pts += [np.exp(1j * rng.uniform(-np.pi, np.pi, size=y.n)) for _ in range(count)]
    return pts


def extreme_point_test(y: VectorTuple, cfg: OptimizerConfig = OptimizerConfig(), samples: int = 64) -> ExtremeTestReport:
    """Decide whether y is an extreme point of the unit ball of mu_{1,n} on l^2_d."""
    res = mu1_maximize(y, cfg)
    if abs(res.value - 1.0) > 1e-8:
        raise ValueError(f"extreme_point_test needs mu_1(y) = 1, measured {res.value!r}")
    n, d = y.n, y.m
    real = y.is_real
    maxs = _maximizer_samples(y, res, cfg, samples)
    A = perturbation_system(y.vectors, maxs, real)
    N, S = nullspace(A)
    info: dict = {"smallest_singular_values": S[-min(4, S.size):] if S.size else S, "maximizer_count": len(maxs)}
    if not real:
        N1, _ = nullspace(perturbation_system(y.vectors, maxs, real, with_phase=False))
        blocks = [_to_complex_blocks(N1[:, j], n, d, real) for j in range(N1.shape[1])]
        info["sum_conditions_nullspace_dim"] = N1.shape[1]
        info["sum_conditions_force_equal"] = bool(
            N1.shape[1] > 0 and all(np.max(np.abs(U - U[0][None, :])) < 1e-8 for U in blocks)
        )
    dim = N.shape[1]
    if dim == 0:
        return ExtremeTestReport(res.estimate, maxs, 0, Verdict.EXTREME, info=info)
    U = _to_complex_blocks(N[:, 0], n, d, real)
    U = U / np.linalg.norm(U) * np.linalg.norm(y.vectors)
    for k in range(30):
        tU = U * 2.0**-k
        plus = mu1_maximize(y.with_vectors(y.vectors + tU), cfg).value
        minus = mu1_maximize(y.with_vectors(y.vectors - tU), cfg).value
        if plus <= 1 + 1e-8 and minus <= 1 + 1e-8:
            return ExtremeTestReport(res.estimate, maxs, dim, Verdict.NOT_EXTREME, tU, info=info)
    return ExtremeTestReport(res.estimate, maxs, dim, Verdict.INCONCLUSIVE, info=info)


# ------------------------------------------------------------------------ c_n


def sdp_frame(Y: np.ndarray, real: bool, cfg: OptimizerConfig, restarts: int = 8, stream: int = 13) -> tuple[float, np.ndarray]:
    """max ||sum_j y_j w_j^H||_F over unit vectors w_j in F^n, by monotone block ascent.

    Returns (value, W) with the w_j as the columns of W.
    """
    n = Y.shape[0]
    A = Y.T
    best, best_W = -1.0, None
    for i in range(restarts):
        rng = cfg.rng(i, stream)
        W = rng.standard_normal((n, n)) + (0 if real else 1j * rng.standard_normal((n, n)))
        W = W / np.linalg.norm(W, axis=0)
        val = np.linalg.norm(A @ W.conj().T)
        for _ in range(cfg.max_iter):
            G = (A @ W.conj().T).conj().T @ A
            nrm = np.linalg.norm(G, axis=0)
            Wn = np.where(nrm > 0, G / np.where(nrm > 0, nrm, 1.0), W)
            vn = np.linalg.norm(A @ Wn.conj().T)
            if vn <= val * (1 + 1e-15):
                break
            W, val = Wn, vn
        if val > best:
            best, best_W = val, W
    return float(best), best_W


def gap_tuple(Y: np.ndarray, W: np.ndarray) -> np.ndarray:
    """x_i = M w_i / ||M||_F with M = sum_j y_j w_j^H; the Hilbert multi-norm of x is at most 1."""
    M = Y.T @ W.conj().T
    X = (M @ W).T / np.linalg.norm(M)
    return X


@dataclass
class CnResult:
    n: int
    d: int
    ratio: float
    conservative: float
    witness: VectorTuple
    max_estimate: NormEstimate
    hilbert_estimate: NormEstimate
    info: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        from .optkernel import to_jsonable

        return to_jsonable({
            "n": self.n,
            "d": self.d,
            "ratio": self.ratio,
            "conservative_ratio": self.conservative,
            "witness": self.witness.to_json(),
            "max": self.max_estimate.to_json(),
            "hilbert": self.hilbert_estimate.to_json(),
            "info": self.info,
        })


def gap_ratio(Y: np.ndarray, real: bool, cfg: OptimizerConfig) -> tuple[float, np.ndarray]:
    """sqrt(SDP/QP) for the dual tuple Y: a lower bound for max/Hilbert of the gap tuple."""
    field_ = ScalarField.REAL if real else ScalarField.COMPLEX
    y = VectorTuple.of(Y, 2, field_)
    qp = mu1_maximize(y, cfg).value
    if qp == 0:
        return 0.0, None
    val, W = sdp_frame(Y, real, cfg)
    return val / qp, W


def _search_dual(n: int, d: int, real: bool, cfg: OptimizerConfig, seeds: Sequence[np.ndarray], steps: int) -> tuple[float, np.ndarray]:
    fast = cfg.with_(grid_density=min(cfg.grid_density, 8), restarts=min(cfg.restarts, 16))
    best_val, best_Y = -1.0, None
    starts = [np.asarray(s, dtype=complex) for s in seeds]
    for i in range(max(1, cfg.restarts // 4)):
        rng = cfg.rng(i, 17)
        Y = rng.standard_normal((n, d)) + (0 if real else 1j * rng.standard_normal((n, d)))
        starts.append(Y.astype(complex))
    for j, Y in enumerate(starts):
        val, _ = gap_ratio(Y, real, fast)
        step = 0.3
        rng = cfg.rng(j, 19)
        for _ in range(steps):
            P = rng.standard_normal((n, d)) + (0 if real else 1j * rng.standard_normal((n, d)))
            Yt = Y + step * np.linalg.norm(Y) / math.sqrt(n * d) * P
            vt, _ = gap_ratio(Yt, real, fast)
            if vt > val:
                Y, val = Yt, vt
                step *= 1.5
            else:
                step *= 0.85
            if step < 1e-6:
                break
        if val > best_val:
            best_val, best_Y = val, Y
    return best_val, best_Y


def cn_lower_bound(
    n: int,
    d: int,
    field_: ScalarField | str = ScalarField.COMPLEX,
    cfg: OptimizerConfig = OptimizerConfig(),
    seeds: Sequence[np.ndarray] = (),
    steps: int = 60,
) -> CnResult:
    """Lower estimate of the best constant c_n in ||x||^max_n <= c_n ||x||^H_n on d-dimensional Hilbert space.

    The search runs over dual tuples y: for unit w_j maximizing ||sum y_j w_j^H||_F,
    the tuple x_i = M w_i / ||M||_F has Hilbert norm at most 1 and maximum norm
    at least ||M||_F / mu_{1,n}(y). The returned ratio is max_norm/hilbert_norm of
    that x; the conservative ratio divides the certified maximum by the proven
    Hilbert bound 1 instead.
    """
    from .multinorms import max_hilbert_ratio

    field_ = ScalarField.parse(field_)
    real = field_ is ScalarField.REAL
    seeds = list(seeds)
    if not real and n >= 4 and d >= 3:
        seeds.append(np.hstack([complex_witness_4().vectors, np.zeros((4, d - 3))])[:n] if n == 4 else
                     np.vstack([np.hstack([complex_witness_4().vectors, np.zeros((4, d - 3))]),
                                np.zeros((n - 4, d))]))
    if d >= 3 and n >= 3:
        rw = np.hstack([real_witness_3().vectors, np.zeros((3, d - 3))])
        seeds.append(np.vstack([rw, np.zeros((n - 3, d))]))
    seeds = [s.astype(complex) for s in seeds if s.shape == (n, d)]
    _, Y = _search_dual(n, d, real, cfg, seeds, steps)
    _, W = sdp_frame(Y, real, cfg)
    X = gap_tuple(Y, W)
    x = VectorTuple.of(X, 2, field_)
    y = VectorTuple.of(Y, 2, field_)
    mu_y = mu1_maximize(y, cfg).value
    lam = Y / mu_y
    pair = max_hilbert_ratio(x, cfg, seeds=[lam])
    mx, hb, ratio = pair.max_estimate, pair.hilbert_estimate, pair.ratio
    return CnResult(n, d, ratio, mx.value, x, mx, hb, info={"dual_tuple": Y, "gap_bound": float(
        np.linalg.norm(Y.T @ W.conj().T) / mu_y)})


# -------------------------------------------------------------- ceiling survey

LITTLE_GROTHENDIECK = 2 / math.sqrt(math.pi)
SCREEN_CONFIG = OptimizerConfig(restarts=1, grid_density=8, max_iter=300)


@dataclass
class SurveyEntry:
    kind: str
    n: int
    d: int
    ratio: float
    max_value: float
    hilbert_value: float


@dataclass
class SurveyResult:
    entries: list[SurveyEntry]

    @property
    def max_ratio(self) -> float:
        return max(e.ratio for e in self.entries)

    def best(self, min_n: int = 1) -> Optional[SurveyEntry]:
        pool = [e for e in self.entries if e.n >= min_n]
        return max(pool, key=lambda e: e.ratio) if pool else None

    def to_json(self) -> dict:
        best = self.best()
        return {
            "count": len(self.entries),
            "max_ratio": self.max_ratio,
            "ceiling": LITTLE_GROTHENDIECK,
            "best": None if best is None else best.__dict__,
            "entries": [e.__dict__ for e in self.entries],
        }


def _structured_tuples(nmax: int, dmax: int, cfg: OptimizerConfig) -> list[tuple[str, np.ndarray, list]]:
    out: list[tuple[str, np.ndarray, list]] = []
    for n in range(2, nmax + 1):
        d = min(n, dmax)
        out.append(("fourier", np.exp(2j * np.pi * np.outer(np.arange(n), np.arange(d)) / n) / math.sqrt(d), []))
    c4 = complex_witness_4().vectors
    rw = real_witness_3().vectors.astype(complex)
    for d in range(3, dmax + 1):
        for name, Y in (("complex-witness-gap", c4), ("real-witness-gap", rw)):
            Yd = np.hstack([Y, np.zeros((Y.shape[0], d - 3))])
            if Yd.shape[0] > nmax:
                continue
            _, W = sdp_frame(Yd, False, cfg)
            mu_y = mu1_maximize(VectorTuple.of(Yd, 2, ScalarField.COMPLEX), cfg).value
            out.append((name, gap_tuple(Yd, W), [Yd / mu_y]))
    for n, d in ((4, 3), (4, 4), (5, 4)):
        if n <= nmax and d <= dmax:
            res = cn_lower_bound(n, d, ScalarField.COMPLEX, cfg, steps=30)
            out.append(("dual-search", res.witness.vectors, [res.max_estimate.witness]))
    return out


def ceiling_survey(
    count: int = 500,
    nmax: int = 6,
    dmax: int = 6,
    cfg: OptimizerConfig = SCREEN_CONFIG,
    perturbations: int = 40,
) -> SurveyResult:
    """max/Hilbert ratios over structured and random complex tuples with n <= nmax, d <= dmax.

    Structured tuples are Fourier frames, gap tuples of the known witnesses and
    the outputs of a dual-tuple search; the best of them is then perturbed, and
    the remainder of the budget is filled with Gaussian tuples.
    """
    entries: list[SurveyEntry] = []

    def record(kind: str, X: np.ndarray, seeds: list) -> None:
        from .multinorms import max_hilbert_ratio

        x = VectorTuple.of(X, 2, ScalarField.COMPLEX)
        pair = max_hilbert_ratio(x, cfg, seeds=seeds)
        entries.append(SurveyEntry(kind, x.n, x.m, pair.ratio, pair.max_estimate.value, pair.hilbert_estimate.value))

    structured = _structured_tuples(nmax, dmax, cfg)
    for kind, X, seeds in structured[:count]:
        record(kind, X, seeds)
    if entries:
        top = max(range(len(entries)), key=lambda i: entries[i].ratio)
        X0 = structured[top][1]
        for i in range(min(perturbations, count - len(entries))):
            rng = cfg.rng(i, 23)
            P = rng.standard_normal(X0.shape) + 1j * rng.standard_normal(X0.shape)
            scale = 10.0 ** rng.uniform(-4, -1)
            record("perturbed", X0 + scale * np.linalg.norm(X0) / math.sqrt(X0.size) * P, [])
    i = 0
    while len(entries) < count:
        rng = cfg.rng(i, 29)
        n, d = (int(v) for v in rng.integers(2, [nmax + 1, dmax + 1]))
        record("gaussian", rng.standard_normal((n, d)) + 1j * rng.standard_normal((n, d)), [])
        i += 1
    return SurveyResult(entries)
