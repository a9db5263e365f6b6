"""Command-line front end. JSON on stdout (CSV for tables), exit 2 on usage errors, 1 on failed checks."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Optional, Sequence

import numpy as np

from . import __version__
from .classify import TrianglePoint, classify, curve_params, delta_exponent, phi_exponent
from .multinorms import (
    MultiNormKind,
    delta_value,
    evaluate,
    max_hilbert_ratio,
    phi_estimate,
    pq_norm,
    value_at_witness,
    witness_array,
)
from .optkernel import BudgetExceeded, OptimizerConfig, to_jsonable
from .spaces import InvalidExponent, ScalarField, SequenceSpace, VectorTuple, delta_basis, dft_tuple, exponent
from .torus_geometry import (
    LITTLE_GROTHENDIECK,
    classify_triple,
    cn_lower_bound,
    complex_witness_4,
    extreme_point_test,
    mu1_maximize,
    real_witness_3,
    scaled_complex_witness_4,
)
from .verify import SUITES, run_suite
from .weak_summing import OperatorMatrix, mu, op_norm

DEFAULTS = {
    "input": None,
    "seed": 0,
    "restarts": None,
    "max_iter": None,
    "tol": None,
    "grid": None,
    "brute_budget": None,
    "format": "json",
    "threads": 1,
}

WITNESSES = {
    "real3": real_witness_3,
    "complex4": complex_witness_4,
    "complex4-scaled": scaled_complex_witness_4,
}

DEFAULT_PQ_GRID = ((1, 1), (1, 2), (1.5, 2), (2, 2), (2, 3), (3, 3))
CSV_COLUMNS = ("table", "p", "q", "r", "n", "computed", "analytic", "rel_gap", "certification", "note")


class UsageError(Exception):
    pass


# ------------------------------------------------------------------ parsing


def _common(parser: argparse.ArgumentParser) -> None:
    g = parser.add_argument_group("common options")
    S = argparse.SUPPRESS
    g.add_argument("--input", default=S, help="JSON input file ('-' for stdin)")
    g.add_argument("--seed", type=int, default=S, help="random seed (default 0)")
    g.add_argument("--restarts", type=int, default=S)
    g.add_argument("--max-iter", type=int, default=S)
    g.add_argument("--tol", type=float, default=S, help="value tolerance of the ascent")
    g.add_argument("--grid", type=int, default=S, help="points per angle of torus grids")
    g.add_argument("--brute-budget", type=int, default=S)
    g.add_argument("--format", choices=("json", "csv"), default=S)
    g.add_argument("--threads", type=int, default=S, help="worker processes for tables (0 = auto)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="multinormlab", description="Multi-norms on finite-dimensional l^r spaces.")
    parser.add_argument("--version", action="version", version=__version__)
    _common(parser)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_)
        _common(p)
        return p

    p = add("norm", "evaluate a multi-norm of a tuple")
    p.add_argument("--kind", required=True, help="min, max, hilbert, pq:P,Q or std:T")

    p = add("mu", "weak p-summing norm of a tuple")
    p.add_argument("--p", required=True)

    p = add("opnorm", "operator norm of a matrix from l^u to l^s")
    p.add_argument("--from", dest="from_exp", default=None, help="domain exponent u (overrides the input)")
    p.add_argument("--to", dest="to_exp", default=None, help="target exponent s (overrides the input)")

    p = add("phi", "rate of growth of a multi-norm on l^r_m")
    p.add_argument("--kind", required=True)
    p.add_argument("--r", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--field", default="complex", choices=("real", "complex"))

    p = add("classify", "decide equivalence of multi-norms on infinite-dimensional L^r")
    p.add_argument("--r", required=True)
    p.add_argument("--p1", required=True)
    p.add_argument("--q1", required=True)
    p.add_argument("--p2")
    p.add_argument("--q2")
    p.add_argument("--vs", help="min, max or std:T")

    add("mu1", "mu_{1,n} of a tuple in l^2 with its maximizer classes")
    add("classify-triple", "class of the torus maximizers of a triple in l^2")

    p = add("extreme-test", "is a tuple with mu_{1,n} = 1 an extreme point of the unit ball")
    p.add_argument("--name", choices=sorted(WITNESSES), help="use a built-in witness instead of --input")

    p = add("witness", "print a built-in witness tuple")
    p.add_argument("--name", required=True, choices=sorted(WITNESSES))

    p = add("cn", "lower estimate of the max/Hilbert constant at level n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--field", default="complex", choices=("real", "complex"))
    p.add_argument("--steps", type=int, default=60, help="perturbation steps of the dual search")

    p = add("table", "sweep of computed against predicted values")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--delta", action="store_true", help="unit-vector tuple norms")
    which.add_argument("--phi", action="store_true", help="rates of growth")
    which.add_argument("--ratio", action="store_true", help="max/Hilbert ratios")
    p.add_argument("--r", default="2", help="comma-separated exponents")
    p.add_argument("--nmax", type=int, default=4)
    p.add_argument("--grid-pq", default="default", help="'default' or pairs like '1,2;2,3'")

    p = add("verify", "run a check suite")
    p.add_argument("--suite", required=True, choices=SUITES + ("all",))
    return parser


def _config(args: argparse.Namespace) -> OptimizerConfig:
    kw: dict[str, Any] = {"seed": args.seed}
    if args.restarts is not None:
        kw["restarts"] = args.restarts
    if args.max_iter is not None:
        kw["max_iter"] = args.max_iter
    if args.tol is not None:
        kw["value_tol"] = args.tol
    if args.grid is not None:
        kw["grid_density"] = args.grid
    if args.brute_budget is not None:
        kw["brute_budget"] = args.brute_budget
    kw["threads"] = _threads(args.threads)
    try:
        return OptimizerConfig(**kw)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _threads(n: int) -> int:
    if n < 0:
        raise UsageError("--threads must be >= 0")
    return n if n > 0 else (os.cpu_count() or 1)


def _read_json(path: Optional[str]) -> Any:
    if path is None:
        raise UsageError("this command needs --input")
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc


def _read_tuple(args: argparse.Namespace) -> VectorTuple:
    return VectorTuple.from_json(_read_json(args.input))


def _parse_entries(rows: Any) -> np.ndarray:
    arr = np.asarray(rows, dtype=float)
    if arr.ndim == 3 and arr.shape[-1] == 2:
        return arr[..., 0] + 1j * arr[..., 1]
    if arr.ndim != 2:
        raise ValueError("matrix entries must be rows of numbers or [re, im] pairs")
    return arr.astype(complex)


# ------------------------------------------------------------------ commands


def cmd_norm(args, cfg):
    x = _read_tuple(args)
    kind = MultiNormKind.parse(args.kind)
    est = evaluate(kind, x, cfg)
    out = {"kind": kind.label(), "n": x.n, "m": x.m, "r": x.r, "field": x.field.value}
    out.update(est.to_json())
    w = out["witness"]
    if kind.name in ("min",):
        parsed = w
    elif kind.name == "std":
        parsed = np.asarray(w, dtype=int)
    elif kind.name == "hilbert":
        parsed = witness_array(w, np.asarray(est.witness).shape)
    else:
        parsed = witness_array(w, (x.n, x.m))
    out["witness_value"] = value_at_witness(kind, x, parsed, cfg)
    return out


def cmd_mu(args, cfg):
    x = _read_tuple(args)
    est = mu(x, args.p, cfg)
    out = {"p": exponent(args.p), "n": x.n, "m": x.m, "r": x.r}
    out.update(est.to_json())
    return out


def cmd_opnorm(args, cfg):
    data = _read_json(args.input)
    if not isinstance(data, dict) or "entries" not in data:
        raise ValueError('matrix input needs {"entries": [[...]], "from": u, "to": s, "field": ...}')
    u = args.from_exp if args.from_exp is not None else data.get("from")
    s = args.to_exp if args.to_exp is not None else data.get("to")
    if u is None or s is None:
        raise UsageError("give the exponents in the input ('from', 'to') or with --from/--to")
    A = OperatorMatrix(_parse_entries(data["entries"]), u, s, ScalarField.parse(data.get("field", "complex")))
    est = op_norm(A, cfg)
    out = {"from": A.from_exp, "to": A.to_exp, "shape": list(A.shape), "field": A.field.value}
    out.update(est.to_json())
    return out


def cmd_phi(args, cfg):
    kind = MultiNormKind.parse(args.kind)
    if args.n < 1 or args.m < 1:
        raise UsageError("--n and --m must be positive")
    space = SequenceSpace(args.m, args.r, ScalarField.parse(args.field))
    return phi_estimate(kind, space, args.n, cfg).to_json()


def cmd_classify(args, cfg):
    r = args.r
    P1 = TrianglePoint.of(args.p1, args.q1)
    if args.vs is not None and (args.p2 is not None or args.q2 is not None):
        raise UsageError("give either --p2/--q2 or --vs, not both")
    if args.vs is None:
        if args.p2 is None or args.q2 is None:
            raise UsageError("give --p2 and --q2, or --vs")
        P2 = TrianglePoint.of(args.p2, args.q2)
        verdict = classify(P1, r, P2)
        points = [curve_params(P1, r).to_json(), curve_params(P2, r).to_json()]
    else:
        verdict = classify(P1, r, vs=args.vs)
        points = [curve_params(P1, r).to_json()]
    out = verdict.to_json()
    out["points"] = points
    return out


def cmd_mu1(args, cfg):
    x = _read_tuple(args)
    res = mu1_maximize(x, cfg)
    out = res.estimate.to_json()
    out["maximizer_classes"] = to_jsonable(res.classes)
    out["all_phases"] = res.all_phases
    return out


def cmd_classify_triple(args, cfg):
    x = _read_tuple(args)
    if x.n != 3:
        raise UsageError(f"classify-triple needs three vectors, got {x.n}")
    return classify_triple(*x.vectors, cfg=cfg).to_json()


def cmd_extreme_test(args, cfg):
    if args.name is not None:
        x = WITNESSES[args.name]()
        if args.name == "complex4":
            x = scaled_complex_witness_4()
    else:
        x = _read_tuple(args)
    return extreme_point_test(x, cfg).to_json()


def cmd_witness(args, cfg):
    return WITNESSES[args.name]().to_json()


def cmd_cn(args, cfg):
    if args.n < 1 or args.d < 1:
        raise UsageError("--n and --d must be positive")
    return cn_lower_bound(args.n, args.d, args.field, cfg, steps=args.steps).to_json()


def cmd_verify(args, cfg):
    reports = run_suite(args.suite, cfg)
    passed = all(r.passed for r in reports)
    return {"suite": args.suite, "pass": passed, "suites": [r.to_json() for r in reports]}, (0 if passed else 1)


# ------------------------------------------------------------------ tables


def _pq_grid(text: str) -> list[tuple[float, float]]:
    if text.strip().lower() == "default":
        return [(float(p), float(q)) for p, q in DEFAULT_PQ_GRID]
    out = []
    for item in text.split(";"):
        parts = item.split(",")
        if len(parts) != 2:
            raise UsageError(f"bad --grid-pq entry {item!r}; expected P,Q")
        out.append((exponent(parts[0]), exponent(parts[1])))
    return out


def _rel_gap(computed: float, analytic: float) -> float:
    return abs(computed - analytic) / max(abs(analytic), 1e-300)


def _row(table: str, p, q, r, n, computed, analytic, cert, note="") -> dict:
    gap = None if computed is None or analytic is None else _rel_gap(computed, analytic)
    return {"table": table, "p": p, "q": q, "r": r, "n": n, "computed": computed, "analytic": analytic,
            "rel_gap": gap, "certification": cert, "note": note}


def _delta_row(job) -> dict:
    p, q, r, n, cfg = job
    try:
        est = pq_norm(delta_basis(n, r), p, q, cfg)
        return _row("delta", p, q, r, n, est.value, delta_value(n, p, q, r), est.certification.value,
                    f"exponent {delta_exponent(p, q, r):.12g}")
    except (BudgetExceeded, ValueError) as exc:
        return _row("delta", p, q, r, n, None, delta_value(n, p, q, r), None, f"error: {exc}")


def _phi_row(job) -> dict:
    p, q, r, n, cfg = job
    try:
        kind = MultiNormKind.pq(p, q)
        field = ScalarField.REAL if r == 1 else ScalarField.COMPLEX
        est = phi_estimate(kind, SequenceSpace(n, r, field), n, cfg)
        e = phi_exponent(p, q, r)
        return _row("phi", p, q, r, n, est.value.value, n**e, est.value.certification.value, f"exponent {e:.12g}")
    except (BudgetExceeded, ValueError) as exc:
        return _row("phi", p, q, r, n, None, None, None, f"error: {exc}")


def _ratio_row(job) -> dict:
    n, cfg = job
    try:
        if n <= 2:
            # level 2: the maximum and Hilbert multi-norms agree, so the bound is 1
            x = dft_tuple(n, 2)
            pair = max_hilbert_ratio(x, cfg)
            return _row("ratio", 1.0, 1.0, 2.0, n, pair.ratio, 1.0, pair.max_estimate.certification.value,
                        "bound 1")
        res = cn_lower_bound(n, n, ScalarField.COMPLEX, cfg, steps=10)
        return _row("ratio", 1.0, 1.0, 2.0, n, res.ratio, LITTLE_GROTHENDIECK,
                    res.max_estimate.certification.value, "bound 2/sqrt(pi)")
    except (BudgetExceeded, ValueError) as exc:
        return _row("ratio", 1.0, 1.0, 2.0, n, None, None, None, f"error: {exc}")


def emit_table(kind: str, rs: Sequence[float], nmax: int, grid: Sequence[tuple[float, float]],
               cfg: OptimizerConfig = OptimizerConfig(), threads: int = 1) -> list[dict]:
    """One row per (p, q, r, n); rows come back in grid order whatever the worker count."""
    if nmax < 2:
        raise UsageError("--nmax must be at least 2")
    if kind == "ratio":
        fn, jobs = _ratio_row, [(n, cfg) for n in range(2, nmax + 1)]
    else:
        fn = _delta_row if kind == "delta" else _phi_row
        jobs = [(p, q, r, n, cfg) for r in rs for p, q in grid for n in range(2, nmax + 1)]
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, jobs))
    return [fn(j) for j in jobs]


def _fmt(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return format(v, ".12g")
    return str(v)


def rows_to_csv(rows: Sequence[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for row in rows:
        w.writerow([_fmt(row[c]) for c in CSV_COLUMNS])
    return buf.getvalue()


def cmd_table(args, cfg):
    kind = "delta" if args.delta else "phi" if args.phi else "ratio"
    rs = [exponent(v) for v in args.r.split(",")]
    rows = emit_table(kind, rs, args.nmax, _pq_grid(args.grid_pq), cfg, cfg.threads)
    return rows


COMMANDS = {
    "norm": cmd_norm,
    "mu": cmd_mu,
    "opnorm": cmd_opnorm,
    "phi": cmd_phi,
    "classify": cmd_classify,
    "mu1": cmd_mu1,
    "classify-triple": cmd_classify_triple,
    "extreme-test": cmd_extreme_test,
    "witness": cmd_witness,
    "cn": cmd_cn,
    "table": cmd_table,
    "verify": cmd_verify,
}


def dumps(obj: Any) -> str:
    return json.dumps(to_jsonable(obj), indent=2, allow_nan=False, default=_fallback)


def _fallback(obj: Any) -> Any:
    if hasattr(obj, "numerator") and hasattr(obj, "denominator"):
        return float(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def run(argv: Optional[Sequence[str]] = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    for k, v in DEFAULTS.items():
        if not hasattr(args, k):
            setattr(args, k, v)
    try:
        cfg = _config(args)
        result = COMMANDS[args.command](args, cfg)
        code = 0
        if isinstance(result, tuple):
            result, code = result
        if args.command == "table" and args.format == "csv":
            stdout.write(rows_to_csv(result))
        elif args.format == "csv":
            raise UsageError("--format csv is only available for table")
        else:
            stdout.write(dumps(result) + "\n")
        return code
    except (UsageError, InvalidExponent, ValueError, KeyError) as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
