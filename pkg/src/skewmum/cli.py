"""Command-line interface.

Exit codes: 0 success, 1 numerical check failure, 2 bad arguments.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import reports
from .collective import BoundViolation, lhs_sum, lhs_sum_isotropic, verify_prop31
from .criteria import CriterionKind, bound, certified_depth_report, evaluate_criterion, k_range
from .linalg import EigenConvergenceError
from .mum import (
    build_mum_set,
    build_mum_set_kappa,
    check_sum_squares,
    completeness_residual,
    max_positive_t,
    sum_f_residual,
    trace_condition_residual,
)
from .skew import SParameter
from .states import StateFamily, isotropic_mixture, parse_state_spec
from .thresholds import TABLE_IDS, MonotonicityError, network_depth_demo, reproduce_table, threshold_solve

# states up to this dimension go through the dense eigensolver path
DENSE_DIM_LIMIT = 256


class UsageError(Exception):
    pass


def _s_arg(text: str) -> SParameter:
    try:
        return SParameter.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _mum_from_args(args, d: int):
    if args.kappa is not None and args.t is not None:
        raise UsageError("give at most one of --kappa and --t")
    if args.kappa is not None:
        return build_mum_set_kappa(d, args.kappa)
    t = args.t if args.t is not None else max_positive_t(d)
    return build_mum_set(d, t)


def _add_mum_opts(p, with_d: bool = True):
    if with_d:
        p.add_argument("--d", type=int, default=2, help="local dimension (default 2)")
    g = p.add_argument_group("MUM parameter (default: largest positive t)")
    g.add_argument("--kappa", type=float)
    g.add_argument("--t", type=float)


def _add_output(p):
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--output", type=Path, help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="skewmum", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="k-separability / k-producibility bounds")
    p.add_argument("--N", type=int, required=True)
    _add_mum_opts(p)
    p.add_argument("--criterion", choices=("ksep", "kprod"), required=True)
    ks = p.add_mutually_exclusive_group(required=True)
    ks.add_argument("--k", type=int)
    ks.add_argument("--all-k", action="store_true")
    _add_output(p)

    p = sub.add_parser("mum", help="MUM construction utilities")
    msub = p.add_subparsers(dest="mum_command", required=True)
    v = msub.add_parser("validate", help="trace conditions, sum of squares, cross-term bound")
    _add_mum_opts(v)
    _add_output(v)
    e = msub.add_parser("export", help="write the MUM effects as JSON")
    _add_mum_opts(e)
    e.add_argument("--output", type=Path)

    for name, helptext in (("detect", "evaluate one criterion on a state"),
                           ("depth", "certified entanglement depth")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--state", required=True, help="ghz:N, w:N, bellpairs:N, example37:a|b|c or a JSON file")
        p.add_argument("--noise", type=float, default=1.0, metavar="P",
                       help="weight p of the pure state in p|psi><psi| + (1-p) I/D (default 1)")
        p.add_argument("--s", type=_s_arg, required=True, help="0, -1, -inf or any real <= 0")
        if name == "detect":
            p.add_argument("--k", type=int, required=True)
            p.add_argument("--criterion", choices=("ksep", "kprod"), required=True)
        _add_mum_opts(p, with_d=False)
        _add_output(p)

    p = sub.add_parser("threshold", help="noise threshold p_k for a white-noise family")
    p.add_argument("--state", required=True)
    p.add_argument("--s", type=_s_arg, required=True)
    p.add_argument("--criterion", choices=("ksep", "kprod"), required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-6)
    _add_mum_opts(p, with_d=False)
    _add_output(p)

    p = sub.add_parser("tables", help="recompute the published tables beside their values")
    p.add_argument("--which", default="all", type=str.upper, choices=TABLE_IDS + ("ALL",))
    p.add_argument("--kappa", type=float)
    _add_output(p)

    p = sub.add_parser("network-demo", help="assign the three six-qubit states to networks")
    p.add_argument("--s", type=_s_arg, default=SParameter.parse("-inf"))
    _add_output(p)
    return parser


def _emit(args, text: str) -> None:
    out = getattr(args, "output", None)
    if out is not None:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _mum_params(mum) -> dict:
    return {"d": mum.d, "t": mum.t, "kappa": mum.kappa}


def cmd_bounds(args) -> str:
    mum = _mum_from_args(args, args.d)
    kind = CriterionKind.parse(args.criterion)
    ks = list(k_range(kind, args.N)) if args.all_k else [args.k]
    rows = [(k, bound(kind, args.N, args.d, mum.kappa, k)) for k in ks]
    if args.format == "json":
        return reports.dumps(reports.envelope(
            "bounds", {"criterion": kind.value, "bounds": [{"k": k, "bound": b} for k, b in rows]},
            d=args.d, N=args.N, t=mum.t, kappa=mum.kappa))
    if args.format == "csv":
        return "k,bound\n" + "".join(f"{k},{b!r}\n" for k, b in rows)
    head = f"{kind.value} bounds, N={args.N}, d={args.d}, kappa={reports.fmt(mum.kappa)}\n"
    return head + reports.transposed_table(["k", "bound"], [[k for k, _ in rows], [b for _, b in rows]])


def cmd_mum(args) -> str:
    mum = _mum_from_args(args, args.d)
    if args.mum_command == "export":
        return reports.dumps(reports.mum_to_dict(mum))
    top, cap = verify_prop31(mum)
    checks = {
        "trace_conditions": trace_condition_residual(mum),
        "completeness": completeness_residual(mum),
        "sum_f_zero": sum_f_residual(mum),
        "sum_of_squares": check_sum_squares(mum),
    }
    ok = all(v <= 1e-10 for v in checks.values()) and top <= cap + 1e-10
    payload = {"residuals": checks, "cross_term_max_eigenvalue": top, "cross_term_bound": cap, "ok": ok}
    if not ok:
        args._failed = True
    if args.format == "json":
        return reports.dumps(reports.envelope("mum-validate", payload, **_mum_params(mum)))
    rows = [[name, val, 1e-10, "ok" if val <= 1e-10 else "FAIL"] for name, val in checks.items()]
    rows.append(["cross_term_max_eig", top, cap, "ok" if top <= cap + 1e-10 else "FAIL"])
    if args.format == "csv":
        return "check,value,limit,status\n" + "".join(",".join(map(str, r)) + "\n" for r in rows)
    head = f"MUM set d={mum.d} t={reports.fmt(mum.t)} kappa={reports.fmt(mum.kappa)}\n"
    return head + reports.text_table(["check", "value", "limit", "status"], rows)


def _state_lhs(args, mum):
    # state specifiers are qubit states, so the MUM set is always d = 2 here
    psi = parse_state_spec(args.state)
    n_sites = psi.num_qubits()
    family = StateFamily(psi, psi.label)
    if psi.dim <= DENSE_DIM_LIMIT:
        rho = isotropic_mixture(family, args.noise)
        return lhs_sum(rho, mum, args.s, n_sites), n_sites, "dense"
    return lhs_sum_isotropic(family, args.noise, mum, args.s), n_sites, "isotropic"


def cmd_detect(args) -> str:
    mum = _mum_from_args(args, 2)
    lhs, n_sites, path = _state_lhs(args, mum)
    rep = evaluate_criterion(None, mum, args.s, args.k, args.criterion, num_sites=n_sites, lhs=lhs)
    payload = rep.to_dict() | {"state": args.state, "noise": args.noise, "path": path}
    if args.format == "json":
        return reports.dumps(reports.envelope("criterion", payload, d=mum.d, N=n_sites, t=mum.t,
                                              kappa=mum.kappa, s=rep.s.label()))
    keys = ["state", "noise", "criterion_kind", "k", "s", "lhs", "bound", "margin", "verdict", "conclusion"]
    if args.format == "csv":
        return ",".join(keys) + "\n" + ",".join(reports.fmt(reports._clean(payload[k]), 17) for k in keys) + "\n"
    return reports.text_table(["field", "value"], [[k, reports._clean(payload[k])] for k in keys])


def cmd_depth(args) -> str:
    mum = _mum_from_args(args, 2)
    lhs, n_sites, path = _state_lhs(args, mum)
    rep = certified_depth_report(None, mum, args.s, num_sites=n_sites, lhs=lhs)
    payload = {"state": args.state, "noise": args.noise, "lhs": rep.lhs, "certified_depth": rep.depth,
               "kprod_bounds": {str(k): b for k, b in rep.bounds.items()}, "reasoning": rep.chain(),
               "path": path}
    if args.format == "json":
        return reports.dumps(reports.envelope("depth", payload, d=mum.d, N=n_sites, t=mum.t,
                                              kappa=mum.kappa, s=args.s.label()))
    if args.format == "csv":
        return "k,bound,violated\n" + "".join(
            f"{k},{b!r},{int(rep.lhs > b + 1e-9)}\n" for k, b in rep.bounds.items())
    return (f"state {args.state} (p={args.noise}), s={args.s.label()}: lhs = {rep.lhs:.10g}\n"
            + "".join(f"  {line}\n" for line in rep.chain())
            + f"certified depth: {rep.depth}\n")


def cmd_threshold(args) -> str:
    mum = _mum_from_args(args, 2)
    psi = parse_state_spec(args.state)
    res = threshold_solve(StateFamily(psi, psi.label), mum, args.s, args.criterion, args.k, tol=args.tol)
    payload = res.to_dict()
    if args.format == "json":
        return reports.dumps(reports.envelope("threshold", payload, d=mum.d, N=psi.num_qubits(), t=mum.t,
                                              kappa=mum.kappa, s=args.s.label()))
    keys = list(payload)
    if args.format == "csv":
        return ",".join(keys) + "\n" + ",".join(reports.fmt(payload[k], 17) for k in keys) + "\n"
    return reports.text_table(["field", "value"], [[k, payload[k]] for k in keys])


def cmd_tables(args) -> str:
    ids = TABLE_IDS if args.which == "ALL" else (args.which,)
    comps = [reproduce_table(t, kappa=args.kappa) for t in ids]
    if args.format == "json":
        return reports.dumps(reports.envelope("tables", {"tables": [c.to_dict() for c in comps]},
                                              d=2, kappa=comps[0].kappa))
    if args.format == "csv":
        return reports.tables_csv(comps)
    return "\n".join(reports.table_text(c) for c in comps)


def cmd_network_demo(args) -> str:
    rep = network_depth_demo(args.s)
    if args.format == "json":
        return reports.dumps(reports.envelope("network-demo", rep.to_dict(), d=2, N=6, kappa=rep.kappa,
                                              s=rep.s))
    if args.format == "csv":
        return "state,I,depth,network\n" + "".join(
            f"{x},{rep.values[x]!r},{rep.depths[x]},{rep.assignment[x]}\n" for x in rep.values)
    lines = ["thresholds: " + ", ".join(f"I_{k}={v:g}" for k, v in rep.thresholds.items())]
    for x in rep.values:
        lines.append(f"psi_{x}: I_{x} = {rep.values[x]:.10g}; {rep.chains[x]} -> {rep.assignment[x]}")
    return "\n".join(lines) + "\n"


COMMANDS = {
    "bounds": cmd_bounds,
    "mum": cmd_mum,
    "detect": cmd_detect,
    "depth": cmd_depth,
    "threshold": cmd_threshold,
    "tables": cmd_tables,
    "network-demo": cmd_network_demo,
}


def _join_s_values(argv: list[str]) -> list[str]:
    """Rewrite ``--s -inf`` / ``--s -0.5`` as ``--s=...`` so argparse does not read a flag."""
    out, i = [], 0
    while i < len(argv):
        if argv[i] == "--s" and i + 1 < len(argv):
            out.append(f"--s={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(_join_s_values(sys.argv[1:] if argv is None else list(argv)))  # exits with status 2 on malformed arguments
    try:
        text = COMMANDS[args.command](args)
    except (MonotonicityError, BoundViolation, EigenConvergenceError) as exc:
        print(f"skewmum: numerical check failed: {exc}", file=sys.stderr)
        return 1
    except (UsageError, ValueError, IndexError) as exc:
        parser.print_usage(sys.stderr)
        print(f"skewmum: error: {exc}", file=sys.stderr)
        return 2
    _emit(args, text)
    return 1 if getattr(args, "_failed", False) else 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
