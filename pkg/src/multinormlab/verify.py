"""Reproducible check suites: each check records what was expected, what was computed and why it should hold."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Callable

import numpy as np

from .classify import REFERENCE_CASES, delta_exponent
from .multinorms import (
    MultiNormKind,
    axiom_report,
    delta_value,
    hilbert_norm,
    max_hilbert_ratio,
    max_norm,
    min_norm,
    pq_norm,
    standard_t_norm,
)
from .optkernel import OptimizerConfig
from .spaces import ScalarField, VectorTuple, delta_basis, dft_tuple, khintchine_pair
from .torus_geometry import (
    LITTLE_GROTHENDIECK,
    Verdict,
    complex_witness_4,
    extreme_point_test,
    mu1_maximize,
    real_witness_3,
    scaled_complex_witness_4,
)
from .weak_summing import mu, mu_orthogonal_closed_form

SUITES = ("axioms", "closedforms", "orderings", "witnesses", "constants", "classifier", "khintchine")


@dataclass
class Check:
    check_id: str
    expected: Any
    computed: Any
    passed: bool
    citation: str

    def to_json(self) -> dict:
        return {
            "id": self.check_id,
            "expected": _plain(self.expected),
            "computed": _plain(self.computed),
            "pass": bool(self.passed),
            "citation": self.citation,
        }


def _plain(v: Any) -> Any:
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    if isinstance(v, np.bool_):
        return bool(v)
    if isinstance(v, complex):
        return [v.real, v.imag]
    return v


@dataclass
class SuiteReport:
    name: str
    checks: list[Check]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "pass": self.passed,
            "total": len(self.checks),
            "failed": sum(not c.passed for c in self.checks),
            "checks": [c.to_json() for c in self.checks],
        }


def _close(a: float, b: float, tol: float) -> bool:
    return abs(a - b) <= tol * max(1.0, abs(b))


def _random_tuple(rng: np.random.Generator, n: int, m: int, r: float, field: ScalarField) -> VectorTuple:
    X = rng.standard_normal((n, m))
    if field is ScalarField.COMPLEX:
        X = X + 1j * rng.standard_normal((n, m))
    return VectorTuple.of(X, r, field)


# ------------------------------------------------------------------ suites


def suite_axioms(cfg: OptimizerConfig, count: int = 10) -> list[Check]:
    cite = "multi-norm axioms: permutation, scalar contraction, zero padding, duplication"
    out = []
    cases = [
        (MultiNormKind.min(), 2.0, ScalarField.COMPLEX),
        (MultiNormKind.max(), 1.0, ScalarField.REAL),
        (MultiNormKind.pq(1, 2), 1.0, ScalarField.REAL),
        (MultiNormKind.standard(2), 2.0, ScalarField.COMPLEX),
        (MultiNormKind.standard(3), 1.5, ScalarField.REAL),
        (MultiNormKind.hilbert(), 2.0, ScalarField.REAL),
    ]
    for k, (kind, r, field) in enumerate(cases):
        for i in range(count):
            rng = cfg.rng(i, 101 + k)
            n = int(rng.integers(1, 4))
            m = 2 if kind.name == "hilbert" else int(rng.integers(1, 4))
            x = _random_tuple(rng, n, m, r, field)
            perm = rng.permutation(n)
            alpha = rng.uniform(-1, 1, n) if field is ScalarField.REAL else np.exp(1j * rng.uniform(0, 6.3, n)) * rng.uniform(0, 1, n)
            rep = axiom_report(kind, x, perm, alpha, cfg)
            ok = rep.a1() and rep.a2() and rep.a3() and rep.a4()
            out.append(Check(f"axioms/{kind.label()}/r={r:g}/{i}", "A1-A4 hold", rep.to_json(), ok, cite))
    return out


def suite_closedforms(cfg: OptimizerConfig) -> list[Check]:
    out = []
    cite = "norm of the unit-vector tuple: n^(min(1/q, max(0, 1/q - 1/p + 1/r)))"
    for r in (1.0, 2.0):
        for p, q in ((1, 1), (1, 2), (2, 2), (2, 3)):
            for n in (2, 3):
                est = pq_norm(delta_basis(n, r), p, q, cfg)
                expect = delta_value(n, p, q, r)
                out.append(Check(f"delta/p={p}/q={q}/r={r:g}/n={n}", expect, est.value,
                                 _close(est.value, expect, 1e-3), cite))
    cite = "weak p-summing norm of an orthogonal tuple in l^2"
    for i, p in enumerate((1.0, 4 / 3, 2.0, 3.0)):
        rng = cfg.rng(i, 111)
        n = 3
        Q, _ = np.linalg.qr(rng.standard_normal((n, n)))
        lens = rng.uniform(0.2, 2.0, n)
        x = VectorTuple.of(Q.T * lens[:, None], 2, ScalarField.REAL)
        est = mu(x, p, cfg)
        expect = mu_orthogonal_closed_form(lens, p)
        out.append(Check(f"mu-orthogonal/p={p:.4g}", expect, est.value, _close(est.value, expect, 1e-4), cite))
    cite = "standard t-multi-norm of the unit-vector tuple equals n^(1/t)"
    for t in (2.0, 3.0):
        for n in (2, 3):
            est = standard_t_norm(delta_basis(n, 2), t, cfg)
            out.append(Check(f"std-delta/t={t:g}/n={n}", n ** (1 / t), est.value, est.value == n ** (1 / t), cite))
    cite = "minimum multi-norm is the largest vector norm"
    x = dft_tuple(4, 2)
    out.append(Check("min-fourier", 1.0, min_norm(x).value, _close(min_norm(x).value, 1.0, 1e-12), cite))
    return out


def suite_orderings(cfg: OptimizerConfig, count: int = 3) -> list[Check]:
    out = []
    cite = "min <= (p,q) <= max, increasing in p and decreasing in q"
    for i in range(count):
        rng = cfg.rng(i, 121)
        x = _random_tuple(rng, 3, 3, 2.0, ScalarField.COMPLEX)
        lo = min_norm(x).value
        # a dual tuple feasible for the weaker norm is feasible for the stronger one
        e12 = pq_norm(x, 1, 2, cfg)
        e23 = pq_norm(x, 2, 3, cfg)
        e22 = pq_norm(x, 2, 2, cfg, seeds=[e12.witness, e23.witness])
        pair = max_hilbert_ratio(x, cfg, seeds=[e22.witness])
        hi = pair.max_estimate.value
        chain = [lo, e12.value, e22.value]
        ok = all(u <= v * (1 + 1e-9) for u, v in zip(chain, chain[1:])) and e23.value <= e22.value * (1 + 1e-9)
        out.append(Check(f"chain/{i}", "min <= (1,2) <= (2,2) and (2,3) <= (2,2)", chain + [e23.value], ok, cite))
        out.append(Check(f"max-top/{i}", f">= {e22.value:.12g} (rel 1e-4)", hi, hi >= e22.value * (1 - 1e-4),
                         "the maximum multi-norm dominates every multi-norm"))
        h = pair.hilbert_estimate.value
        out.append(Check(f"hilbert-two-two/{i}", e22.value, h, _close(h, e22.value, 1e-3),
                         "Hilbert multi-norm equals the (2,2)-multi-norm"))
    return out


def _gram_exact(G: np.ndarray, expect: np.ndarray, tol: float = 1e-12) -> bool:
    return bool(np.max(np.abs(G - expect)) <= tol)


def suite_witnesses(cfg: OptimizerConfig) -> list[Check]:
    out = []
    y = real_witness_3()
    res = mu1_maximize(y, cfg)
    out.append(Check("real3/mu1", 1.0, res.value, abs(res.value - 1) <= 1e-12,
                     "real three-vector witness lies on the unit sphere of mu_{1,3}"))
    G = np.real(y.gram()) * 11
    target = np.array([[1, 1, -1], [1, 2, 1], [-1, 1, 6]], dtype=float)
    out.append(Check("real3/gram", target.tolist(), np.round(G, 12).tolist(), _gram_exact(G, target),
                     "off-diagonal inner products are +-1/11"))
    off = G - np.diag(np.diag(G))
    out.append(Check("real3/non-orthogonal", True, bool(np.any(np.abs(off) > 1e-12)), bool(np.any(np.abs(off) > 1e-12)),
                     "the witness is not an orthogonal tuple"))
    rep = extreme_point_test(y, cfg)
    out.append(Check("real3/extreme", Verdict.EXTREME.value, rep.verdict.value, rep.verdict is Verdict.EXTREME,
                     "extreme point of the mu_{1,3} unit ball"))
    x = complex_witness_4()
    G = x.gram()
    target = -np.ones((4, 4)) + np.diag(np.diag(G).real + 1)
    out.append(Check("complex4/gram", "[x_i, x_j] = -1 for i != j", np.round(G.real, 12).tolist(),
                     _gram_exact(G, target), "pairwise inner products of the four-vector witness"))
    ys = scaled_complex_witness_4()
    res = mu1_maximize(ys, cfg)
    out.append(Check("complex4/mu1", 1.0, res.value, abs(res.value - 1) <= 1e-9,
                     "scaled four-vector witness has mu_{1,4} = 1"))
    worst = max(abs(complex(np.sum(xi))) for xi in res.classes) if res.classes else math.inf
    out.append(Check("complex4/phase-sum", "<= 1e-6", worst, worst <= 1e-6,
                     "every torus maximizer has vanishing coordinate sum"))
    rep = extreme_point_test(ys, cfg)
    out.append(Check("complex4/nullspace", 0, rep.nullspace_dim, rep.nullspace_dim == 0,
                     "the extremality linear system has trivial solution space"))
    forced = bool(rep.info.get("sum_conditions_force_equal"))
    out.append(Check("complex4/equal-perturbations", True, forced, forced,
                     "the sum conditions alone force u_1 = u_2 = u_3 = u_4"))
    return out


def suite_constants(cfg: OptimizerConfig, count: int = 3) -> list[Check]:
    out = []
    cite = "at level 2 the maximum and Hilbert multi-norms agree"
    for i in range(count):
        rng = cfg.rng(i, 131)
        x = _random_tuple(rng, 2, 3, 2.0, ScalarField.COMPLEX)
        pair = max_hilbert_ratio(x, cfg)
        out.append(Check(f"level2/{i}", 1.0, pair.ratio, _close(pair.ratio, 1.0, 1e-3), cite))
    cite = "max/Hilbert ratio is at most 2/sqrt(pi)"
    for n in (3, 4):
        x = dft_tuple(n, 2)
        pair = max_hilbert_ratio(x, cfg)
        out.append(Check(f"ceiling/fourier-{n}", f"<= {LITTLE_GROTHENDIECK + 1e-3:.6f}", pair.ratio,
                         pair.ratio <= LITTLE_GROTHENDIECK + 1e-3, cite))
    return out


def suite_classifier(cfg: OptimizerConfig) -> list[Check]:
    out = []
    for case in REFERENCE_CASES:
        got = case.run()
        ok = got.verdict is case.verdict and got.rule == case.rule
        out.append(Check(f"classifier/{case.name}", f"{case.verdict.value} [{case.rule}]",
                         f"{got.verdict.value} [{got.rule}]", ok, case.source))
    cite = "exponent of the unit-vector tuple on L^1 is 1/q"
    for p, q in ((1, 2), (2, 3), (3, 3)):
        a = delta_exponent(p, q, 1)
        out.append(Check(f"delta-exponent-l1/p={p}/q={q}", 1 / q, a, a == 1 / q, cite))
    return out


def suite_khintchine(cfg: OptimizerConfig, count: int = 10) -> list[Check]:
    out = []
    cite = "Rademacher embeddings R_n, S_n preserve the duality pairing"
    for n in range(1, 9):
        worst = 0.0
        for i in range(count):
            rng = cfg.rng(i, 140 + n)
            r = float(rng.uniform(1.0, 4.0))
            pair = khintchine_pair(n, r)
            x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            y = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            lhs = np.sum(pair.embed(x) * np.conj(pair.embed_dual(y)))
            rhs = np.sum(x * np.conj(y))
            worst = max(worst, abs(lhs - rhs) / max(1.0, abs(rhs)))
        out.append(Check(f"khintchine/n={n}", "<= 1e-12", worst, worst <= 1e-12, cite))
    return out


RUNNERS: dict[str, Callable[[OptimizerConfig], list[Check]]] = {
    "axioms": suite_axioms,
    "closedforms": suite_closedforms,
    "orderings": suite_orderings,
    "witnesses": suite_witnesses,
    "constants": suite_constants,
    "classifier": suite_classifier,
    "khintchine": suite_khintchine,
}


def run_suite(name: str, cfg: OptimizerConfig = OptimizerConfig()) -> list[SuiteReport]:
    names = SUITES if name == "all" else (name,)
    unknown = [s for s in names if s not in RUNNERS]
    if unknown:
        raise ValueError(f"unknown suite {unknown[0]!r}")
    return [SuiteReport(s, RUNNERS[s](cfg)) for s in names]
