"""Acceptance gate: one PASS/FAIL line per criterion, printed in the terminal summary."""

import math
import time

import numpy as np
import pytest

from multinormlab.classify import REFERENCE_CASES, phi_exponent
from multinormlab.multinorms import (
    MultiNormKind,
    axiom_report,
    delta_value,
    hilbert_norm,
    max_norm,
    phi_estimate,
    pq_norm,
    standard_t_norm,
)
from multinormlab.optkernel import Certification, OptimizerConfig
from multinormlab.spaces import INF, ScalarField, SequenceSpace, VectorTuple, delta_basis, khintchine_pair
from multinormlab.torus_geometry import (
    LITTLE_GROTHENDIECK,
    Verdict,
    ceiling_survey,
    cn_lower_bound,
    complex_witness_4,
    extreme_point_test,
    mu1_maximize,
    real_witness_3,
    scaled_complex_witness_4,
)
from multinormlab.weak_summing import (
    EXACT_ROUTES,
    OperatorMatrix,
    interpolation_holds,
    mu,
    mu_orthogonal_closed_form,
    summing_constant_estimate,
    summing_constant_family,
)

RESULTS: dict[int, tuple[bool, str]] = {}
CFG = OptimizerConfig()


def record(k: int, ok: bool, detail: str, gate: bool = True) -> None:
    RESULTS[k] = (ok, detail)
    if gate:
        assert ok, detail


def _gauss(rng, shape, complex_):
    X = rng.standard_normal(shape)
    return X + 1j * rng.standard_normal(shape) if complex_ else X


def test_criterion_01_axioms():
    t0 = time.perf_counter()
    kinds = [
        ("min", 3.0, ScalarField.COMPLEX, 3),
        ("max", 1.0, ScalarField.REAL, 3),
        ("pq:1,2", 1.0, ScalarField.REAL, 3),
        ("std:2", 2.0, ScalarField.COMPLEX, 3),
        ("std:3", 1.5, ScalarField.REAL, 3),
        ("hilbert", 2.0, ScalarField.REAL, 2),
    ]
    bad, inexact = [], []
    for k, (name, r, field, mmax) in enumerate(kinds):
        kind = MultiNormKind.parse(name)
        for i in range(200):
            rng = np.random.default_rng([1, k, i])
            n, m = int(rng.integers(1, 4)), int(rng.integers(1, mmax + 1))
            x = VectorTuple.of(_gauss(rng, (n, m), field is ScalarField.COMPLEX), r, field)
            if field is ScalarField.REAL:
                alpha = rng.uniform(-1, 1, n)
            else:
                alpha = rng.uniform(0, 1, n) * np.exp(1j * rng.uniform(0, 2 * np.pi, n))
            rep = axiom_report(kind, x, rng.permutation(n), alpha, CFG)
            if not rep.exact():
                inexact.append((name, i))
            if not (rep.a1() and rep.a3() and rep.a2(1e-9) and rep.a4(1e-9)):
                bad.append((name, i))
    dt = time.perf_counter() - t0
    ok = not bad and not inexact and dt < 120
    record(1, ok, f"{len(kinds)} kinds x 200 tuples, failures {len(bad)}, non-exact {len(inexact)}, {dt:.1f} s")


def test_criterion_02_delta_closed_form():
    t0 = time.perf_counter()
    worst, rows = 0.0, 0
    for r in (1.0, 1.5, 2.0, 3.0):
        for p, q in ((1, 1), (1, 2), (1.5, 2), (2, 2), (2, 3), (3, 3)):
            for n in (2, 3, 4):
                est = pq_norm(delta_basis(n, r), p, q, CFG)
                expect = delta_value(n, p, q, r)
                worst = max(worst, abs(est.value - expect) / expect)
                rows += 1
    dt = time.perf_counter() - t0
    record(2, worst <= 1e-3 and dt < 600, f"{rows} grid points, worst relative gap {worst:.2e}, {dt:.1f} s")


def test_criterion_03_orthogonal_mu():
    worst_exact, worst_ascent, count = 0.0, 0.0, 0
    for i in range(100):
        rng = np.random.default_rng([3, i])
        n = int(rng.integers(1, 4))
        m = int(rng.integers(n, 5))
        complex_ = bool(i % 2)
        Q, _ = np.linalg.qr(_gauss(rng, (m, m), complex_))
        lens = rng.uniform(0.2, 2.0, n)
        x = VectorTuple.of(Q[:, :n].T * lens[:, None], 2, ScalarField.COMPLEX if complex_ else ScalarField.REAL)
        for p in (1.0, 4 / 3, 2.0, 3.0):
            est = mu(x, p, CFG)
            expect = mu_orthogonal_closed_form(lens, p)
            if est.info.get("route") in EXACT_ROUTES:
                worst_exact = max(worst_exact, abs(est.value - expect))
            else:
                worst_ascent = max(worst_ascent, abs(est.value - expect) / expect)
            count += 1
    ok = worst_exact <= 1e-6 and worst_ascent <= 1e-4
    record(3, ok, f"{count} evaluations, exact-route abs error {worst_exact:.1e}, ascent rel error {worst_ascent:.1e}")


def test_criterion_04_hilbert_is_two_two():
    worst = 0.0
    for i in range(50):
        rng = np.random.default_rng([4, i])
        n, d = int(rng.integers(1, 4)), int(rng.integers(1, 4))
        x = VectorTuple.of(_gauss(rng, (n, d), True), 2, ScalarField.COMPLEX)
        h = hilbert_norm(x, CFG).value
        v = pq_norm(x, 2, 2, CFG).value
        worst = max(worst, abs(v - h) / h)
    record(4, worst <= 1e-3, f"50 complex tuples, worst relative gap {worst:.2e}")


def test_criterion_05_level_two_max_equals_hilbert():
    worst = 0.0
    for i in range(50):
        rng = np.random.default_rng([5, i])
        d = int(rng.integers(1, 4))
        x = VectorTuple.of(_gauss(rng, (2, d), True), 2, ScalarField.COMPLEX)
        h = hilbert_norm(x, CFG).value
        # no Hilbert start, so the two values come from independent searches
        mx = max_norm(x, CFG, hilbert_seed=False).value
        worst = max(worst, abs(mx - h) / h)
    record(5, worst <= 1e-3, f"50 complex pairs, worst relative gap {worst:.2e}")


def test_criterion_06_real_witness():
    y = real_witness_3()
    est = mu(y, 1, CFG)
    mu_ok = est.info.get("route") == "signs" and abs(est.value - 1) <= 1e-12
    Z = np.array([[1, 0, 0], [1, 1, 0], [-1, 2, 1]])
    G = Z @ Z.T
    gram_ok = {int(G[i, j]) for i in range(3) for j in range(3) if i != j} == {1, -1}
    gram_ok = gram_ok and np.max(np.abs(y.gram().real * 11 - G)) <= 1e-12
    extreme = extreme_point_test(y, CFG).verdict is Verdict.EXTREME
    non_orth = bool(np.any(G - np.diag(np.diag(G))))
    res = cn_lower_bound(3, 3, ScalarField.REAL, CFG)
    delta = res.ratio - 1
    ok = mu_ok and gram_ok and extreme and non_orth and delta > 1e-3
    record(6, ok, f"mu_1 = {est.value:.15f} via {est.info.get('route')}, gram +-1/11 {gram_ok}, "
                  f"extreme {extreme}, real level-3 ratio 1 + {delta:.4e}")


def test_criterion_07_complex_witness():
    G = complex_witness_4().gram()
    gram_ok = all(G[i, j] == -1 for i in range(4) for j in range(4) if i != j)
    y = scaled_complex_witness_4()
    res = mu1_maximize(y, CFG)
    worst = max(abs(np.sum(xi)) for xi in res.classes)
    rep = extreme_point_test(y, CFG)
    forced = bool(rep.info.get("sum_conditions_force_equal"))
    ok = gram_ok and worst <= 1e-6 and rep.nullspace_dim == 0 and forced and abs(res.value - 1) <= 1e-9
    record(7, ok, f"gram -1 {gram_ok}, {len(res.classes)} maximizer classes with |sum xi| <= {worst:.1e}, "
                  f"nullspace dim {rep.nullspace_dim}, equal-u structure {forced}")


def test_criterion_08_ceiling():
    t0 = time.perf_counter()
    res = ceiling_survey(count=500, nmax=6, dmax=6)
    dt = time.perf_counter() - t0
    best4 = res.best(min_n=4)
    ok = (len(res.entries) == 500 and res.max_ratio <= LITTLE_GROTHENDIECK + 1e-3
          and best4 is not None and best4.ratio > 1 + 1e-3 and dt < 900)
    record(8, ok, f"{len(res.entries)} tuples, max ratio {res.max_ratio:.6f} (ceiling {LITTLE_GROTHENDIECK:.6f}), "
                  f"best n >= 4 ratio {best4.ratio:.6f} ({best4.kind}, n = {best4.n}, d = {best4.d}), {dt:.1f} s")


def test_criterion_09_khintchine():
    worst = 0.0
    for n in range(1, 9):
        for i in range(100):
            rng = np.random.default_rng([9, n, i])
            pair = khintchine_pair(n, float(rng.uniform(1, 6)))
            x, y = _gauss(rng, n, True), _gauss(rng, n, True)
            lhs = np.sum(pair.embed(x) * np.conj(pair.embed_dual(y)))
            rhs = np.sum(x * np.conj(y))
            worst = max(worst, abs(lhs - rhs) / max(1.0, abs(rhs)))
    record(9, worst <= 1e-12, f"800 pairs, n <= 8, worst error {worst:.1e}")


def test_criterion_10_standard_oracle():
    greedy_bad, exceed, agree, total_local = 0, 0, 0, 0
    for i in range(100):
        rng = np.random.default_rng([10, i])
        n, m = int(rng.integers(1, 4)), int(rng.integers(1, 7))
        r = float(rng.choice([1.0, 1.5, 2.0, 3.0]))
        x = VectorTuple.of(_gauss(rng, (n, m), bool(i % 2)), r, ScalarField.COMPLEX if i % 2 else ScalarField.REAL)
        if standard_t_norm(x, r, CFG, route="greedy").value != standard_t_norm(x, r, CFG, route="enumerate").value:
            greedy_bad += 1
        for t in (1.5 * r, 2 * r):
            e = standard_t_norm(x, t, CFG, route="enumerate").value
            loc = standard_t_norm(x, t, CFG, route="local").value
            total_local += 1
            exceed += loc > e * (1 + 1e-12)
            agree += abs(loc - e) <= 1e-12 * e
    delta_ok = all(standard_t_norm(delta_basis(n, r), t, CFG).value == n ** (1 / t)
                   for n in (1, 2, 3) for r in (1.0, 2.0) for t in (r, 1.5 * r, 2 * r))
    rate = agree / total_local
    ok = greedy_bad == 0 and exceed == 0 and rate >= 0.95 and delta_ok
    record(10, ok, f"greedy mismatches {greedy_bad}, local above enumeration {exceed}, "
                   f"local agreement {rate:.0%}, unit-vector values exact {delta_ok}")


def test_criterion_11_classifier():
    misses = [c.name for c in REFERENCE_CASES if (lambda v: (v.verdict, v.rule))(c.run()) != (c.verdict, c.rule)]
    cited = all(c.source and c.run().justification for c in REFERENCE_CASES)
    ok = len(REFERENCE_CASES) >= 25 and not misses and cited
    record(11, ok, f"{len(REFERENCE_CASES)} cases, mismatches {misses or 'none'}, all cited {cited}")


def test_criterion_12_phi_at_two():
    bad, rows = [], 0
    for n in (2, 3, 4):
        for p, q in ((2, 2), (1, 2), (2, 3), (1, 3)):
            est = phi_estimate(MultiNormKind.pq(p, q), SequenceSpace(n, 2, ScalarField.COMPLEX), n, CFG)
            target = n ** phi_exponent(p, q, 2)
            v = est.value.value
            rows += 1
            if not (0.95 * target <= v <= target * (1 + 1e-6)):
                bad.append((n, p, q, v, target))
    interp = True
    for n in (2, 3):
        ident = OperatorMatrix(np.eye(n), 2, 2, ScalarField.COMPLEX)
        for p in (1.0, 2.0):
            e = summing_constant_family(ident, [2.0, 2.5, 3.0], p, n, CFG.with_(restarts=8))
            interp &= interpolation_holds(e[1].value, e[0].value, e[2].value, 2.5, 2.0, 3.0)
    record(12, not bad and interp, f"{rows} estimates, out of band {bad or 'none'}, interpolation {interp}")


def test_criterion_13_summing_trend():
    ratios = []
    for n in (2, 4, 8):
        A = OperatorMatrix(np.eye(n), INF, 1, ScalarField.REAL)
        p22 = summing_constant_estimate(A, 2, 2, n, CFG, lorentz_target=(2, 1)).value
        p21 = summing_constant_estimate(A, 2, 1, n, CFG, lorentz_target=(2, 1)).value
        ratios.append(p22 / p21)
    ok = all(a <= b * (1 + 1e-9) for a, b in zip(ratios, ratios[1:]))
    record(13, ok, "ratios " + ", ".join(f"{v:.6f}" for v in ratios) + " (soft, non-gating)", gate=False)
