"""Symbolic decisions about (p,q)-multi-norms on infinite-dimensional L^r.

Exponents are handled as Fractions: rational inputs (ints, Fractions, strings
such as '4/3', floats within 1e-12 of a fraction with denominator <= 10^6) are
compared exactly, so boundary cases follow the closed/open inequalities of the
underlying results. Every verdict carries a rule key and a one-line reason.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Optional

from .spaces import InvalidExponent

HALF = Fraction(1, 2)
MAX_DENOMINATOR = 10**6
RATIONAL_TOL = 1e-12


def rational(x: Any) -> Fraction:
    """Exact value of an exponent; floats are snapped to a nearby small-denominator fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip().lower()
        if s in ("inf", "infinity", "oo"):
            raise InvalidExponent("infinite exponents are not allowed here")
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidExponent(f"cannot parse exponent {x!r}") from exc
    v = float(x)
    if not math.isfinite(v):
        raise InvalidExponent("infinite exponents are not allowed here")
    snapped = Fraction(v).limit_denominator(MAX_DENOMINATOR)
    if abs(float(snapped) - v) <= RATIONAL_TOL * max(1.0, abs(v)):
        return snapped
    return Fraction(v)


def _pos(v: Fraction) -> Fraction:
    return v if v > 0 else Fraction(0)


def _rbar(r: Fraction) -> Fraction:
    return min(r, Fraction(2))


def _check_r(r: Any) -> Fraction:
    r = rational(r)
    if r < 1:
        raise InvalidExponent(f"need r >= 1, got {r}")
    return r


# ------------------------------------------------------------------ exponents


def delta_exponent_exact(p: Any, q: Any, r: Any) -> Fraction:
    p, q, r = rational(p), rational(q), _check_r(r)
    return _pos(1 / q - _pos(1 / p - 1 / r))


def delta_exponent(p: Any, q: Any, r: Any) -> float:
    """alpha with ||(delta_1, ..., delta_n)||^(p,q) = n^alpha on l^r."""
    return float(delta_exponent_exact(p, q, r))


def phi_exponent_exact(p: Any, q: Any, r: Any) -> Fraction:
    p, q, r = rational(p), rational(q), _check_r(r)
    if r == 1:
        # on L^1 the rate of growth is n^(1/q) for every p
        return 1 / q
    rb = _rbar(r)
    if 1 / p - 1 / q >= 1 / rb:
        return Fraction(0)
    if p >= rb:
        return 1 / q
    return 1 / rb - 1 / p + 1 / q


def phi_exponent(p: Any, q: Any, r: Any) -> float:
    """e with phi_n^(p,q)(L^r) ~ n^e (equality when r = 2)."""
    return float(phi_exponent_exact(p, q, r))


# ------------------------------------------------------------------ the triangle


@dataclass(frozen=True)
class TrianglePoint:
    """(p, q) with 1 <= p <= q < inf."""

    p: Fraction
    q: Fraction

    def __post_init__(self) -> None:
        p, q = rational(self.p), rational(self.q)
        if not (1 <= p <= q):
            raise InvalidExponent(f"({p}, {q}) is outside the triangle 1 <= p <= q < inf")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @classmethod
    def of(cls, p: Any, q: Any) -> "TrianglePoint":
        return cls(rational(p), rational(q))

    @property
    def c(self) -> Fraction:
        return 1 / self.p - 1 / self.q

    def key(self) -> tuple[Fraction, Fraction]:
        return (self.p, self.q)

    def label(self) -> str:
        return f"({self.p}, {self.q})"


def _point(P: Any) -> TrianglePoint:
    if isinstance(P, TrianglePoint):
        return P
    p, q = P
    return TrianglePoint.of(p, q)


@dataclass(frozen=True)
class CurveConstants:
    """u_c, v_c, w_c, x_c of the curve family for one c (None where undefined)."""

    r: Fraction
    c: Fraction
    r_bar: Fraction
    u_c: Optional[Fraction]
    v_c: Optional[Fraction]
    w_c: Optional[Fraction]
    x_c: Optional[Fraction]


def curve_constants(c: Any, r: Any) -> CurveConstants:
    """Where the level set 1/p - 1/q = c bends for the given r.

    u_c: C_c meets p = r at (r, u_c), for c < 1/r.
    v_c, w_c: for r > 2 and c in [1/r, 1/2), C_c meets p = 2 at (2, v_c) and the
    line q = v_c meets C_{1/r} at (w_c, v_c).
    x_c: for r < 2 and c in (1/2, 1/r), the line q = u_c meets C_{1/2} at (x_c, u_c);
    the same formula gives x_c = r at c = 1/2, which is where that curve turns.
    """
    c, r = rational(c), _check_r(r)
    if not (0 <= c < 1):
        raise ValueError(f"need c in [0, 1), got {c}")
    u = v = w = x = None
    if c < 1 / r:
        u = r / (1 - c * r)
    if r > 2 and 1 / r <= c < HALF:
        v = 2 / (1 - 2 * c)
        w = 1 / (1 / r + 1 / v)
    if r < 2 and HALF <= c < 1 / r:
        x = 1 / (HALF + 1 / u)
    return CurveConstants(r, c, _rbar(r), u, v, w, x)


class Branch(str, Enum):
    LEVEL = "level-set"
    HORIZONTAL_U = "horizontal-u"
    HORIZONTAL_V = "horizontal-v"


@dataclass(frozen=True)
class CurveParams:
    """The C-curve and D-curve through a point of the triangle."""

    point: TrianglePoint
    r: Fraction
    c: Fraction
    d: Fraction
    branch: Branch
    constants: CurveConstants

    @property
    def r_bar(self) -> Fraction:
        return self.constants.r_bar

    def to_json(self) -> dict:
        k = self.constants

        def f(v: Optional[Fraction]) -> Optional[float]:
            return None if v is None else float(v)

        return {
            "p": float(self.point.p),
            "q": float(self.point.q),
            "r": float(self.r),
            "r_bar": float(self.r_bar),
            "c": float(self.c),
            "d_curve": float(self.d),
            "branch": self.branch.value,
            "u_c": f(k.u_c),
            "v_c": f(k.v_c),
            "w_c": f(k.w_c),
            "x_c": f(k.x_c),
        }


def curve_params(point: Any, r: Any) -> CurveParams:
    """c = 1/p - 1/q and the parameter d of the (r-dependent) D-curve containing the point.

    D_d equals C_d when d >= 1/r_bar; for d < 1/r it follows C_d up to p = r and
    then runs horizontally along q = u_d; for r > 2 and d in [1/r, 1/2) it follows
    C_d up to p = 2 and then runs along q = v_d until it meets C_{1/r}.
    """
    P = _point(point)
    r = _check_r(r)
    c = P.c
    rb = _rbar(r)
    if c >= 1 / rb:
        d, branch = c, Branch.LEVEL
    elif P.p > r:
        # on the horizontal q = u_d
        d, branch = 1 / r - 1 / P.q, Branch.HORIZONTAL_U
    elif r > 2 and P.p > 2 and c >= 1 / r:
        # on the horizontal q = v_d
        d, branch = HALF - 1 / P.q, Branch.HORIZONTAL_V
    else:
        d, branch = c, Branch.LEVEL
    return CurveParams(P, r, c, d, branch, curve_constants(d, r))


# ------------------------------------------------------------------ verdicts


class Verdict(str, Enum):
    EQUIVALENT = "Equivalent"
    NOT_EQUIVALENT = "NotEquivalent"
    EQUIVALENT_TO_MIN = "EquivalentToMin"
    EQUIVALENT_TO_MAX = "EquivalentToMax"
    OPEN = "Open"


DEFERRED_NOTE = "expected to be equivalent; the proof is deferred to later work and is not assumed here"


@dataclass(frozen=True)
class EquivalenceVerdict:
    verdict: Verdict
    rule: str
    justification: str
    equal: bool = False
    external_note: Optional[str] = None

    def to_json(self) -> dict:
        out: dict = {"verdict": self.verdict.value, "rule": self.rule, "citation": self.justification}
        if self.equal:
            out["equal"] = True
        if self.external_note:
            out["note"] = self.external_note
        return out


def _v(verdict: Verdict, rule: str, why: str, equal: bool = False, note: Optional[str] = None) -> EquivalenceVerdict:
    return EquivalenceVerdict(verdict, rule, why, equal, note)


def _classify_l1(P1: TrianglePoint, P2: TrianglePoint) -> EquivalenceVerdict:
    if P1.q != P2.q:
        return _v(Verdict.NOT_EQUIVALENT, "l1-different-q",
                  "on L^1 the unit-vector tuple has (p,q)-norm n^(1/q), so different q separate")
    lo, hi = sorted((P1, P2), key=TrianglePoint.key)
    if hi.p < hi.q:
        return _v(Verdict.EQUIVALENT, "l1-same-q",
                  "on L^1, (p,q) and (1,q) are equivalent for p < q")
    return _v(Verdict.NOT_EQUIVALENT, "l1-diagonal",
              "on L^1, (q,q) is not equivalent to (1,q) for q > 1 (summing norms of I_n into l^{q,1}_n)")


def _classify_diagonal(p1: Fraction, p2: Fraction, r: Fraction) -> EquivalenceVerdict:
    rb = _rbar(r)
    lo, hi = sorted((p1, p2))
    if lo >= rb:
        return _v(Verdict.NOT_EQUIVALENT, "diagonal-above-rbar",
                  "(p,p) and (q,q) are not equivalent when p, q >= r_bar and p != q")
    if hi < rb:
        return _v(Verdict.EQUIVALENT, "diagonal-below-rbar",
                  "(p,p) is equivalent to the maximum multi-norm for 1 <= p < r_bar")
    if hi > rb:
        return _v(Verdict.NOT_EQUIVALENT, "diagonal-straddle",
                  "(p,p) with p < r_bar is equivalent to max, (q,q) with q > r_bar is not")
    if r < 2:
        return _v(Verdict.NOT_EQUIVALENT, "diagonal-r-r",
                  "for 1 < r < 2, (r,r) is not equivalent to the maximum multi-norm")
    return _v(Verdict.EQUIVALENT, "diagonal-two-two",
              "for r >= 2, (2,2) is equivalent to the maximum multi-norm")


def classify_pq_pair(P1: Any, P2: Any, r: Any) -> EquivalenceVerdict:
    """Are the (p1,q1)- and (p2,q2)-multi-norms equivalent on infinite-dimensional L^r?"""
    P1, P2 = _point(P1), _point(P2)
    r = _check_r(r)
    if P1 == P2:
        return _v(Verdict.EQUIVALENT, "same-point", "identical points give the same multi-norm", equal=True)
    if r == 1:
        return _classify_l1(P1, P2)
    if P1.p == P1.q and P2.p == P2.q:
        return _classify_diagonal(P1.p, P2.p, r)
    rb = _rbar(r)
    c1, c2 = P1.c, P2.c
    if c1 >= 1 / rb and c2 >= 1 / rb:
        return _v(Verdict.EQUIVALENT, "min-region",
                  "both points satisfy 1/p - 1/q >= 1/r_bar, where every (p,q)-multi-norm is equivalent to min",
                  equal=(r == 2))
    if (c1 >= 1 / rb) != (c2 >= 1 / rb):
        return _v(Verdict.NOT_EQUIVALENT, "min-region-boundary",
                  "only one point lies in the region 1/p - 1/q >= 1/r_bar (rates of growth differ)")
    d1, d2 = curve_params(P1, r), curve_params(P2, r)
    if d1.d != d2.d:
        return _v(Verdict.NOT_EQUIVALENT, "different-d-curves",
                  "points on distinct curves D_c with c < 1/r_bar are not equivalent")
    d = d1.d
    lo, hi = sorted((P1, P2), key=TrianglePoint.key)
    if d == 0:
        return _classify_diagonal(lo.p, hi.p, r)
    if r >= 2:
        if hi.p > 2:
            return _v(Verdict.NOT_EQUIVALENT, "r-ge-2-past-two",
                      "for r >= 2, equivalent points on one curve must both have p <= 2 "
                      "(distinct Hilbert-space summing ideals otherwise)")
        return _v(Verdict.OPEN, "r-ge-2-same-level-set",
                  "for r >= 2 both points lie on C_c with p <= 2; the Hilbert-space ideals agree",
                  note=DEFERRED_NOTE)
    # 1 < r < 2 and 0 < d < 1/r
    if d < HALF:
        if hi.p > r:
            return _v(Verdict.NOT_EQUIVALENT, "r-lt-2-past-r",
                      "for 1 < r < 2 and c < 1/2, equivalent points on one curve must both have p <= r")
        return _v(Verdict.OPEN, "r-lt-2-same-level-set",
                  "for 1 < r < 2 both points lie on C_c with p <= r; the Hilbert-space ideals agree",
                  note=DEFERRED_NOTE)
    x_c = d1.constants.x_c
    if hi.p > x_c:
        return _v(Verdict.NOT_EQUIVALENT, "r-lt-2-past-x",
                  "for 1 < r < 2 and c in [1/2, 1/r), equivalent points must have p <= x_c")
    if hi.p <= r:
        return _v(Verdict.OPEN, "r-lt-2-same-level-set",
                  "for 1 < r < 2 both points lie on C_c with p <= r; the Hilbert-space ideals agree",
                  note=DEFERRED_NOTE)
    return _v(Verdict.OPEN, "r-lt-2-horizontal-segment",
              "for 1 < r < 2 the points lie on q = u_c with p up to x_c; equivalence is open "
              "although the Hilbert-space ideals agree")


def classify_vs_min(P: Any, r: Any) -> EquivalenceVerdict:
    """Is the (p,q)-multi-norm on L^r equivalent to the minimum multi-norm?"""
    P = _point(P)
    r = _check_r(r)
    if r == 1:
        return _v(Verdict.NOT_EQUIVALENT, "l1-never-min",
                  "on L^1 no (p,q)-multi-norm is equivalent to the minimum multi-norm")
    rb = _rbar(r)
    if P.c >= 1 / rb:
        if r == 2:
            return _v(Verdict.EQUIVALENT_TO_MIN, "min-equal-hilbert",
                      "on L^2, 1/p - 1/q >= 1/2 makes the (p,q)-multi-norm equal to min", equal=True)
        return _v(Verdict.EQUIVALENT_TO_MIN, "min-region",
                  "1/p - 1/q >= 1/r_bar: the identity of L^{r'} is (r_bar', 1)-summing")
    if P.c < HALF:
        return _v(Verdict.NOT_EQUIVALENT, "min-below-half",
                  "on any infinite-dimensional space, (p,q) is not equivalent to min when 1/p - 1/q < 1/2")
    return _v(Verdict.NOT_EQUIVALENT, "min-growth",
              "1/2 <= 1/p - 1/q < 1/r: the rate of growth is unbounded, unlike that of min")


def classify_vs_max(P: Any, r: Any) -> EquivalenceVerdict:
    """Is the (p,q)-multi-norm on L^r equivalent to the maximum multi-norm?"""
    P = _point(P)
    r = _check_r(r)
    if P.p == 1 and P.q == 1:
        return _v(Verdict.EQUIVALENT_TO_MAX, "max-one-one",
                  "the (1,1)-multi-norm equals the maximum multi-norm", equal=True)
    if r == 1:
        return _v(Verdict.NOT_EQUIVALENT, "l1-max-only-one-one",
                  "on L^1 only (1,1) is equivalent to the maximum multi-norm")
    if P.q > 2:
        return _v(Verdict.NOT_EQUIVALENT, "max-q-above-two",
                  "on any infinite-dimensional space, (p,q) is not equivalent to max when q > 2")
    rb = _rbar(r)
    if P.p == P.q:
        if P.p < rb:
            return _v(Verdict.EQUIVALENT_TO_MAX, "diagonal-below-rbar",
                      "(p,p) is equivalent to the maximum multi-norm for 1 <= p < r_bar")
        if P.p > rb:
            return _v(Verdict.NOT_EQUIVALENT, "diagonal-above-rbar",
                      "(p,p) is not equivalent to the maximum multi-norm for p > r_bar")
        if r < 2:
            return _v(Verdict.NOT_EQUIVALENT, "diagonal-r-r",
                      "for 1 < r < 2, (r,r) is not equivalent to the maximum multi-norm")
        return _v(Verdict.EQUIVALENT_TO_MAX, "diagonal-two-two",
                  "for r >= 2, (2,2) is equivalent to the maximum multi-norm")
    # off the diagonal: max is the point (1,1), which lies on D_0
    pair = classify_pq_pair(P, TrianglePoint.of(1, 1), r)
    verdict = Verdict.EQUIVALENT_TO_MAX if pair.verdict is Verdict.EQUIVALENT else pair.verdict
    return EquivalenceVerdict(verdict, pair.rule, pair.justification + " (compared with (1,1) = max)",
                              external_note=pair.external_note)


def classify_standard_t(P: Any, t: Any, r: Any) -> EquivalenceVerdict:
    """Is the (p,q)-multi-norm on L^r equivalent to the standard t-multi-norm?"""
    P = _point(P)
    r, t = _check_r(r), rational(t)
    if t < r:
        raise InvalidExponent(f"the standard t-multi-norm needs t >= r, got t = {t}, r = {r}")
    if r == 1:
        # on L^1 the standard t-multi-norm equals the (1,t)-multi-norm
        if P.p == 1 and P.q == t:
            return _v(Verdict.EQUIVALENT, "l1-standard-equal",
                      "on L^1 the standard t-multi-norm equals the (1,t)-multi-norm", equal=True)
        pair = _classify_l1(P, TrianglePoint.of(1, t))
        return EquivalenceVerdict(pair.verdict, pair.rule, pair.justification + " (standard t = (1,t) on L^1)")
    if r >= 2:
        return _v(Verdict.NOT_EQUIVALENT, "std-r-ge-2",
                  "for r >= 2 no (p,q)-multi-norm is equivalent to a standard t-multi-norm")
    bound = 2 * r / (2 - r)
    if t < bound:
        return _v(Verdict.NOT_EQUIVALENT, "std-t-small",
                  "for 1 < r < 2 equivalence needs t >= 2r/(2-r)")
    if P.c < HALF:
        return _v(Verdict.NOT_EQUIVALENT, "std-below-half",
                  "equivalence with a standard t-multi-norm needs 1/p - 1/q >= 1/2")
    if curve_params(P, r).d != curve_params(TrianglePoint.of(r, t), r).d:
        return _v(Verdict.NOT_EQUIVALENT, "std-other-curve",
                  "equivalence needs (p,q) on the same curve D_c as (r,t)")
    if P.p > 2 * t / (2 + t):
        return _v(Verdict.NOT_EQUIVALENT, "std-p-large",
                  "equivalence needs p <= 2t/(2+t)")
    return _v(Verdict.OPEN, "std-open",
              "open only when 1 < r < 2 and t >= 2r/(2-r); it would follow from deciding [t] against (r,t)")


# ------------------------------------------------------------------ Hilbert ideals


class IdealKind(str, Enum):
    HILBERT_SCHMIDT = "HilbertSchmidt"
    SCHATTEN = "Schatten"
    LORENTZ_SCHATTEN = "LorentzSchatten"
    ALL_BOUNDED = "AllBounded"


@dataclass(frozen=True)
class HilbertIdeal:
    """Which operator ideal the (q,p)-summing operators on a Hilbert space form."""

    variant: IdealKind
    params: tuple[Fraction, ...] = field(default_factory=tuple)

    def label(self) -> str:
        if self.variant is IdealKind.SCHATTEN:
            return f"S_{self.params[0]}"
        if self.variant is IdealKind.LORENTZ_SCHATTEN:
            return f"S_{{{self.params[0]},{self.params[1]}}}"
        if self.variant is IdealKind.HILBERT_SCHMIDT:
            return "S_2"
        return "B(H)"

    def to_json(self) -> dict:
        return {"variant": self.variant.value, "params": [float(v) for v in self.params], "label": self.label()}


def hilbert_ideal(p: Any, q: Any) -> HilbertIdeal:
    P = TrianglePoint.of(p, q)
    if P.p == P.q:
        return HilbertIdeal(IdealKind.HILBERT_SCHMIDT)
    if P.c >= HALF:
        return HilbertIdeal(IdealKind.ALL_BOUNDED)
    if P.p <= 2:
        return HilbertIdeal(IdealKind.SCHATTEN, (1 / (1 / P.q - 1 / P.p + HALF),))
    return HilbertIdeal(IdealKind.LORENTZ_SCHATTEN, (2 * P.q / P.p, P.q))


# ------------------------------------------------------------------ dispatch


def classify(P1: Any, r: Any, P2: Any = None, vs: Optional[str] = None) -> EquivalenceVerdict:
    """One entry point: vs in {None, 'min', 'max', 'std:T'}."""
    if vs is None:
        if P2 is None:
            raise ValueError("give a second point or a comparison target")
        return classify_pq_pair(P1, P2, r)
    vs = vs.strip().lower()
    if vs == "min":
        return classify_vs_min(P1, r)
    if vs == "max":
        return classify_vs_max(P1, r)
    if vs.startswith("std:"):
        return classify_standard_t(P1, vs[4:], r)
    raise ValueError(f"unknown comparison {vs!r}; use min, max or std:T")


# ------------------------------------------------------------------ reference table

F = Fraction


@dataclass(frozen=True)
class ReferenceCase:
    """A hand-derived verdict: op is 'pair', 'min', 'max' or 'std'."""

    name: str
    op: str
    args: tuple
    r: Fraction
    verdict: Verdict
    rule: str
    source: str

    def run(self) -> EquivalenceVerdict:
        if self.op == "pair":
            return classify_pq_pair(self.args[0], self.args[1], self.r)
        if self.op == "min":
            return classify_vs_min(self.args[0], self.r)
        if self.op == "max":
            return classify_vs_max(self.args[0], self.r)
        if self.op == "std":
            return classify_standard_t(self.args[0], self.args[1], self.r)
        raise ValueError(f"unknown op {self.op!r}")


def _case(name, op, args, r, verdict, rule, source) -> ReferenceCase:
    return ReferenceCase(name, op, args, F(r), verdict, rule, source)


V = Verdict
REFERENCE_CASES: tuple[ReferenceCase, ...] = (
    # L^1
    _case("l1-same-q", "pair", ((1, 2), (F(3, 2), 2)), 1, V.EQUIVALENT, "l1-same-q",
          "L^1 classification: equal q and p2 < q"),
    _case("l1-diagonal", "pair", ((2, 2), (1, 2)), 1, V.NOT_EQUIVALENT, "l1-diagonal",
          "L^1: (q,q) is not equivalent to (1,q)"),
    _case("l1-different-q", "pair", ((1, 2), (1, 3)), 1, V.NOT_EQUIVALENT, "l1-different-q",
          "L^1: the unit-vector tuple has norm n^(1/q)"),
    _case("l1-min", "min", ((1, 9),), 1, V.NOT_EQUIVALENT, "l1-never-min",
          "L^1 corollary: never equivalent to min"),
    _case("l1-max-one-one", "max", ((1, 1),), 1, V.EQUIVALENT_TO_MAX, "max-one-one",
          "L^1 corollary: equivalent to max iff p = q = 1 (equal)"),
    _case("l1-max-other", "max", ((1, 2),), 1, V.NOT_EQUIVALENT, "l1-max-only-one-one",
          "L^1 corollary: equivalent to max iff p = q = 1"),
    # the diagonal
    _case("diag-distinct-large", "pair", ((3, 3), (4, 4)), 3, V.NOT_EQUIVALENT, "diagonal-above-rbar",
          "(p,p) classification: p, q >= r_bar, p != q"),
    _case("diag-above-rbar-vs-max", "max", ((F(9, 5), F(9, 5)),), F(3, 2), V.NOT_EQUIVALENT, "diagonal-above-rbar",
          "(p,p) classification: p > r_bar is not max"),
    _case("diag-two-two-small-r", "max", ((2, 2),), F(3, 2), V.NOT_EQUIVALENT, "diagonal-above-rbar",
          "(p,p) classification: p = 2 > r_bar = r"),
    _case("diag-below-rbar-vs-max", "max", ((F(3, 2), F(3, 2)),), 3, V.EQUIVALENT_TO_MAX, "diagonal-below-rbar",
          "(p,p) classification: 1 <= p < r_bar is max"),
    _case("diag-below-rbar-pair", "pair", ((F(6, 5), F(6, 5)), (F(7, 5), F(7, 5))), F(3, 2), V.EQUIVALENT,
          "diagonal-below-rbar", "(p,p) classification: both below r_bar"),
    _case("diag-one-one", "max", ((1, 1),), 3, V.EQUIVALENT_TO_MAX, "max-one-one",
          "(1,1) equals max on every space"),
    _case("diag-r-r", "max", ((F(3, 2), F(3, 2)),), F(3, 2), V.NOT_EQUIVALENT, "diagonal-r-r",
          "(p,p) classification: (r,r) is not max for 1 < r < 2"),
    _case("diag-two-two-vs-max", "max", ((2, 2),), 4, V.EQUIVALENT_TO_MAX, "diagonal-two-two",
          "(p,p) classification: (2,2) is max for r >= 2"),
    _case("diag-two-two-pair", "pair", ((2, 2), (1, 1)), 4, V.EQUIVALENT, "diagonal-two-two",
          "(p,p) classification: (2,2) and (1,1) for r >= 2"),
    # min / max corollaries
    _case("max-q-above-two", "max", ((1, 3),), 4, V.NOT_EQUIVALENT, "max-q-above-two",
          "general spaces: not max when q > 2"),
    _case("min-below-half", "min", ((2, 3),), 2, V.NOT_EQUIVALENT, "min-below-half",
          "general spaces: not min when 1/p - 1/q < 1/2"),
    _case("min-equal-hilbert", "min", ((1, 2),), 2, V.EQUIVALENT_TO_MIN, "min-equal-hilbert",
          "min region on L^2: equality"),
    _case("min-region", "min", ((1, 4),), F(3, 2), V.EQUIVALENT_TO_MIN, "min-region",
          "min region: 1/p - 1/q >= 1/r_bar"),
    _case("min-region-boundary", "min", ((1, 3),), F(3, 2), V.EQUIVALENT_TO_MIN, "min-region",
          "min region is closed: 1/p - 1/q = 1/r"),
    _case("min-growth", "min", ((1, F(5, 2)),), F(3, 2), V.NOT_EQUIVALENT, "min-growth",
          "rate of growth unbounded for 1/2 <= c < 1/r"),
    # distinct D-curves
    _case("both-min-region", "pair", ((1, 2), (1, 5)), 3, V.EQUIVALENT, "min-region",
          "distinct curves: both in the min region"),
    _case("one-min-region", "pair", ((1, 2), (2, 3)), 3, V.NOT_EQUIVALENT, "min-region-boundary",
          "distinct curves: exactly one in the min region"),
    _case("different-d", "pair", ((1, F(3, 2)), (1, F(5, 4))), 3, V.NOT_EQUIVALENT, "different-d-curves",
          "distinct curves D_c below 1/r_bar"),
    # 1 < r < 2
    _case("r-lt-2-level-open", "pair", ((1, F(4, 3)), (F(6, 5), F(12, 7))), F(3, 2), V.OPEN,
          "r-lt-2-same-level-set", "r < 2 classification and its remark: same C_c, p <= r"),
    _case("r-lt-2-past-r", "pair", ((1, F(4, 3)), (2, F(12, 5))), F(3, 2), V.NOT_EQUIVALENT, "r-lt-2-past-r",
          "r < 2 classification: c < 1/2 needs p <= r"),
    _case("r-lt-2-horizontal-open", "pair", ((F(8, 5), 12), (F(17, 10), 12)), F(3, 2), V.OPEN,
          "r-lt-2-horizontal-segment", "r < 2 remark: q = u_c with r <= p1 < p2 <= x_c is open"),
    _case("r-lt-2-past-x", "pair", ((F(8, 5), 12), (F(19, 10), 12)), F(3, 2), V.NOT_EQUIVALENT, "r-lt-2-past-x",
          "r < 2 classification: c >= 1/2 needs p <= x_c"),
    _case("r-lt-2-upper-level-open", "pair", ((1, F(12, 5)), (F(6, 5), 4)), F(3, 2), V.OPEN,
          "r-lt-2-same-level-set", "r < 2 remark: same C_c with c in [1/2, 1/r), p <= r"),
    # r >= 2
    _case("r-ge-2-open", "pair", ((1, F(4, 3)), (F(4, 3), 2)), 3, V.OPEN, "r-ge-2-same-level-set",
          "r >= 2 remark: same C_c with p <= 2"),
    _case("r-ge-2-past-two", "pair", ((1, F(4, 3)), (F(12, 5), 6)), 3, V.NOT_EQUIVALENT, "r-ge-2-past-two",
          "r >= 2 classification: p2 > 2 excluded"),
    _case("r-ge-2-horizontal-v", "pair", ((F(5, 2), 8), (2, 8)), 4, V.NOT_EQUIVALENT, "r-ge-2-past-two",
          "r >= 2 classification on the horizontal q = v_c"),
    # standard t
    _case("std-l1-equal", "std", ((1, 3), 3), 1, V.EQUIVALENT, "l1-standard-equal",
          "standard t on L^1 equals (1,t)"),
    _case("std-r-ge-2", "std", ((2, 3), 3), 3, V.NOT_EQUIVALENT, "std-r-ge-2",
          "standard t: r >= 2 excluded"),
    _case("std-open", "std", ((F(3, 2), 6), 6), F(3, 2), V.OPEN, "std-open",
          "standard t: open only for 1 < r < 2 and t >= 2r/(2-r)"),
    _case("std-t-small", "std", ((1, 4), 4), F(3, 2), V.NOT_EQUIVALENT, "std-t-small",
          "standard t: t < 2r/(2-r) excluded"),
    _case("std-below-half", "std", ((F(3, 2), 2), 6), F(3, 2), V.NOT_EQUIVALENT, "std-below-half",
          "standard t: 1/p - 1/q < 1/2 excluded"),
    _case("std-other-curve", "std", ((1, 3), 6), F(3, 2), V.NOT_EQUIVALENT, "std-other-curve",
          "standard t: different D-curve from (r,t)"),
)
