"""Command line entry point: bounds, objective evaluation, tables, optimization, verification.

Exit codes: 0 success, 1 a verification check failed, 2 range or
hypothesis violation, 3 unparsable input, 4 infeasible sequence,
5 convergence failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile
from pathlib import Path

from . import bounds
from .errors import ConvergenceError, DomainError, InfeasibleError, ParseError, PWBoundsError
from .objective import ep, ep_breakdown
from .quadrature import Bracket
from .sequences import SeparationParams, ZeroSequence, validate_membership

EXIT_CHECK_FAILED = 1

LOW_THEOREM = (
    "For 2 <= p <= 4 and separations min(2/pi, 2/p) <= delta1 <= 1, 2/3 <= delta2 <= 1 the supremum of E_p "
    "is attained at tau_n = n - 1 + 2/p."
)
HIGH_THEOREM = (
    "For 4 <= p <= 5 and separations 1/2 <= delta1 <= 1/2 + 3/p, 1 - 2/p <= delta2 <= 1 the supremum of E_p "
    "is attained exactly at tau_n = n - 1/2 + 3/p."
)
BOUND_THEOREM = "C_p <= 2 sup E_p, which is below p/2 for every 2 < p <= 5 and continuous across p = 4."


def fmt(x: float) -> str:
    return f"{x:.12g}"


def bracket_json(b: Bracket) -> dict:
    return {"lo": float(fmt(b.lo)), "hi": float(fmt(b.hi))}


def bracket_text(b: Bracket) -> str:
    return f"{fmt(b.lo)} / {fmt(b.hi)}"


def atomic_write(path: Path, text: str) -> None:
    """Write via a temporary file in the target directory, then rename over the target."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def emit(text: str, out: str | None) -> None:
    if out:
        atomic_write(Path(out), text)
    else:
        sys.stdout.write(text)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# bound


def cmd_bound(args) -> int:
    method = args.method
    if method == "corollary":
        res = bounds.cp_upper(args.p)
    else:
        res = bounds.cp_reference(args.p, {"half-p": "half_p", "ceil": "power_trick_ceil", "brevig": "brevig"}[method])
    if args.format == "json":
        text = dumps({
            "p": float(fmt(res.p)),
            "method": res.method.value,
            "value": bracket_json(res.value),
            "ratio_to_p": bracket_json(res.ratio_to_p),
            "hypotheses": res.hypotheses,
        })
    else:
        text = (
            f"p = {fmt(res.p)}\n"
            f"method = {res.method.value}\n"
            f"value = {bracket_text(res.value)}\n"
            f"ratio_to_p = {bracket_text(res.ratio_to_p)}\n"
            f"hypotheses: {res.hypotheses}\n"
        )
    emit(text, args.out)
    return 0


# ep


def parse_sequence(text: str) -> ZeroSequence:
    """JSON ({"explicit": [...], "tail_step": s} or a bare list) or whitespace/comma separated numbers."""
    stripped = text.strip()
    if not stripped:
        raise ParseError("empty sequence file")
    tail_step = 1.0
    if stripped[0] in "[{":
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
        if isinstance(data, dict):
            if "explicit" not in data:
                raise ParseError("JSON object needs an 'explicit' list")
            terms, tail_step = data["explicit"], data.get("tail_step", 1.0)
        else:
            terms = data
    else:
        terms = stripped.replace(",", " ").split()
    try:
        values = [float(t) for t in terms]
        tail_step = float(tail_step)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"non-numeric entry: {exc}") from None
    if not values or not all(math.isfinite(v) for v in values):
        raise ParseError("sequence needs at least one finite term")
    try:
        return ZeroSequence(tuple(values), tail_step)
    except DomainError as exc:
        raise InfeasibleError(f"not a zero sequence: {exc}") from None


def read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None


def cmd_ep(args) -> int:
    tau = parse_sequence(read_input(args.sequence))
    if not args.no_validate and (args.delta1 is not None or args.delta2 is not None):
        # an omitted separation only has to be positive, which every zero sequence satisfies
        d = SeparationParams(args.delta1 if args.delta1 is not None else 1e-9,
                             args.delta2 if args.delta2 is not None else 1e-9)
        report = validate_membership(tau, d)
        if not report:
            raise InfeasibleError(str(report), report)
    value = ep(tau, args.p)
    rows = ep_breakdown(tau, args.p, args.breakdown) if args.breakdown is not None else None
    if args.format == "json":
        out = {"p": float(fmt(args.p)), "sequence": tau.to_json(), "ep": bracket_json(value)}
        if rows is not None:
            out["breakdown"] = [float(fmt(v)) for v in rows]
        text = dumps(out)
    else:
        text = f"ep = {bracket_text(value)}\n"
        if rows is not None:
            text += "".join(f"level {n}: {fmt(v)}\n" for n, v in enumerate(rows))
    emit(text, args.out)
    return 0


# figure1


def cmd_figure1(args) -> int:
    rows = bounds.figure1_table(args.pmin, args.pmax, args.step)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(bounds.FIGURE1_HEADER)
    for row in rows:
        writer.writerow(row.csv_fields())
    emit(buf.getvalue(), args.out)
    return 0


# optimize


def maximizer_family(seq: ZeroSequence, p: float, step: float) -> tuple[str, bool]:
    """Name of the closed-form maximizer family for p and whether seq lies in it up to one grid step."""
    t = seq.explicit
    if p <= 4:
        ok = all(n - 1 + 2.0 / p - step - 1e-12 <= x <= n + step + 1e-12 for n, x in enumerate(t, start=1))
        return "n - 1 + 2/p <= tau_n <= n", ok
    ok = all(abs(x - (n - 0.5 + 3.0 / p)) <= step + 1e-12 for n, x in enumerate(t, start=1))
    return "tau_n = n - 1/2 + 3/p", ok


def cmd_optimize(args) -> int:
    from .verify.optimizer import OptimizerConfig, brute_force_sup

    p = args.p
    default = bounds.LOW_DELTAS if p <= 4 else bounds.HIGH_DELTAS
    d = SeparationParams(args.delta1 if args.delta1 is not None else default.delta1,
                         args.delta2 if args.delta2 is not None else default.delta2)
    closed = bounds.sup_value_low(p, d) if p <= 4 else bounds.sup_value_high(p, d)
    cfg = OptimizerConfig(args.n, args.grid, args.restarts, args.seed, args.mode, args.span)
    best, value = brute_force_sup(p, d, cfg)
    gap = closed.mid - value.mid
    tol = args.tol if args.tol is not None else args.grid
    family, in_family = maximizer_family(best, p, args.grid)
    within = -(closed.width + value.width) <= gap <= tol
    if args.format == "json":
        text = dumps({
            "p": float(fmt(p)),
            "delta": [float(fmt(d.delta1)), float(fmt(d.delta2))],
            "config": {"n_explicit": cfg.n_explicit, "grid_step": cfg.grid_step, "restarts": cfg.restarts,
                       "rng_seed": cfg.rng_seed, "mode": cfg.mode.value, "span": cfg.span},
            "best": [float(fmt(x)) for x in best.explicit],
            "ep": bracket_json(value),
            "closed_form": bracket_json(closed),
            "gap": float(fmt(gap)),
            "tolerance": float(fmt(tol)),
            "within_tolerance": within,
            "maximizer_family": family,
            "in_family": in_family,
        })
    else:
        text = (
            f"best = {' '.join(fmt(x) for x in best.explicit)} (unit tail)\n"
            f"ep = {bracket_text(value)}\n"
            f"closed form = {bracket_text(closed)}\n"
            f"gap = {fmt(gap)} (tolerance {fmt(tol)}, {'within' if within else 'NOT within'})\n"
            f"maximizer family: {family} ({'matches' if in_family else 'does not match'})\n"
        )
    emit(text, args.out)
    if not within:
        raise ConvergenceError(f"gap {fmt(gap)} to the closed form exceeds tolerance {fmt(tol)}", value.mid, gap)
    return 0


# verify


def cmd_verify(args) -> int:
    from .verify.appendix import SUITE_CASES, sweep_appendix
    from .verify.lemmas import LEMMA_IDS, check_lemma

    out_dir = Path(args.out)
    jobs = []
    if args.suite in ("lemmas", "all"):
        ids = args.lemma or LEMMA_IDS
        jobs += [("lemma", lid, lambda lid=lid: check_lemma(lid, args.samples, args.seed)) for lid in ids]
    if args.suite in ("appendix", "all"):
        jobs += [("appendix", cid, lambda cid=cid: sweep_appendix(cid, rng_seed=args.seed)) for cid in SUITE_CASES]
    first_failure = None
    summary = []
    for kind, name, run in jobs:
        report = run()
        path = out_dir / f"{kind}_{name}.json"
        atomic_write(path, report.dumps() + "\n")
        print(f"{report}  -> {path}")
        summary.append({"kind": kind, "id": name, "passed": report.passed, "report": path.name})
        if not report.passed and first_failure is None:
            first_failure = path
    atomic_write(out_dir / "summary.json", dumps({"suite": args.suite, "seed": args.seed, "reports": summary}))
    if first_failure is not None:
        print(f"first failing report: {first_failure}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pwbounds",
        description="Upper bounds for the point-evaluation constant C_p of Paley-Wiener spaces, "
                    "via the extremal problem sup E_p(tau) over separated zero sequences.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bound", help="upper bound for C_p",
                       description=f"Reproduces: {BOUND_THEOREM} {LOW_THEOREM} {HIGH_THEOREM}")
    b.add_argument("--p", type=float, required=True)
    b.add_argument("--method", choices=["corollary", "half-p", "ceil", "brevig"], default="corollary")
    b.add_argument("--format", choices=["text", "json"], default="text")
    b.add_argument("--out")
    b.set_defaults(func=cmd_bound)

    e = sub.add_parser("ep", help="evaluate E_p on a sequence file",
                       description="Evaluates the objective E_p(tau), the integral over (0, inf) of the squared "
                                   "positive part of the kernel built from tau, as a rigorous-tail bracket. "
                                   f"Its supremum is the quantity of the theorems: {LOW_THEOREM} {HIGH_THEOREM}")
    e.add_argument("sequence", help="file with the explicit terms (JSON or whitespace separated); '-' for stdin")
    e.add_argument("--p", type=float, required=True)
    e.add_argument("--delta1", type=float)
    e.add_argument("--delta2", type=float)
    e.add_argument("--no-validate", action="store_true", help="skip the T(delta1, delta2) membership check")
    e.add_argument("--breakdown", type=int, metavar="LEVEL", help="also print stripe contributions up to LEVEL")
    e.add_argument("--format", choices=["text", "json"], default="text")
    e.add_argument("--out")
    e.set_defaults(func=cmd_ep)

    f = sub.add_parser("figure1", help="table of C_p/p bounds for plotting",
                       description=f"Tabulates the new bound over p against the reference bound. {BOUND_THEOREM} "
                                   "The reference curve jumps at p = 4 through the power trick.")
    f.add_argument("--pmin", type=float, default=2.0)
    f.add_argument("--pmax", type=float, default=5.0)
    f.add_argument("--step", type=float, default=0.01)
    f.add_argument("--out")
    f.set_defaults(func=cmd_figure1)

    o = sub.add_parser("optimize", help="grid search for sup E_p",
                       description=f"Confirms the maximizers by direct search. {LOW_THEOREM} {HIGH_THEOREM}")
    o.add_argument("--p", type=float, required=True)
    o.add_argument("--n", type=int, default=5, help="number of free terms")
    o.add_argument("--grid", type=float, default=0.01)
    o.add_argument("--delta1", type=float)
    o.add_argument("--delta2", type=float)
    o.add_argument("--mode", choices=["exhaustive", "ascent"], default="exhaustive")
    o.add_argument("--restarts", type=int, default=10)
    o.add_argument("--seed", type=int, default=0)
    o.add_argument("--span", type=float, default=0.5, help="search tau_n <= n + span")
    o.add_argument("--tol", type=float, help="allowed gap to the closed form (default: grid step)")
    o.add_argument("--format", choices=["text", "json"], default="text")
    o.add_argument("--out")
    o.set_defaults(func=cmd_optimize)

    v = sub.add_parser("verify", help="sampled sign checks of the comparison lemmas and appendix inequalities",
                       description="Runs the numerical checks behind the theorems: every comparison lemma of the "
                                   "reduction to the maximizers and every appendix inequality. "
                                   f"{LOW_THEOREM} {HIGH_THEOREM}")
    v.add_argument("--suite", choices=["lemmas", "appendix", "all"], default="all")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--samples", type=int, help="override each lemma's default sample count")
    v.add_argument("--lemma", action="append", help="restrict to these lemma ids (repeatable)")
    v.add_argument("--out", default="verify_reports", help="directory for JSON reports")
    v.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return exc.exit_code
    except PWBoundsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
