"""Command-line front end: bound reports, selection runs, simulations, and
bound sweeps over the pinning-set size.

All node labels on the command line and in emitted JSON/CSV are 1-based;
internal indices are 0-based. Every command is deterministic given its
inputs and --seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__, bounds, graph, select, simulate, spectral

BUDGET_ENV = "PINCTL_BUDGET"


class CliError(Exception):
    pass


def _read_graph(path) -> graph.Graph:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read graph file {path}: {exc}") from exc
    return graph.load_graph(text)


def _budget():
    return int(os.environ.get(BUDGET_ENV, select.DEFAULT_SUBSET_BUDGET))


def _parse_pins(spec, n):
    """1-based pin list: 'none'/'' -> empty, 'all' -> every node."""
    if spec is None or spec.strip() in ("", "none"):
        return ()
    if spec.strip() == "all":
        return tuple(range(n))
    try:
        labels = [int(tok) for tok in spec.split(",") if tok.strip()]
    except ValueError as exc:
        raise CliError(f"cannot parse pin list {spec!r}: {exc}") from exc
    pins = []
    for label in labels:
        if not 1 <= label <= n:
            raise CliError(f"pin label {label} outside [1, {n}]")
        pins.append(label - 1)
    if len(set(pins)) != len(pins):
        raise CliError(f"pin list {spec!r} repeats a node")
    return tuple(sorted(pins))


def _labels(pins):
    return [int(i) + 1 for i in pins]


def _manifest(command, parameters, seed, outputs):
    return {
        "command": command,
        "parameters": parameters,
        "seed": seed,
        "outputs": outputs,
        "versions": f"pinctl {__version__}",
    }


def _report_payload(report: bounds.BoundsReport):
    return {
        "mu_l": report.mu_l,
        "mu_u": report.mu_u,
        "mu_exact": report.mu_exact,
        "pins": _labels(report.pins),
        "gain": report.gain,
        "k": report.k,
        "mean_dist": report.mean_dist,
    }


def _emit(payload, stream):
    json.dump(payload, stream, indent=2, sort_keys=True)
    stream.write("\n")


def cmd_bounds(args, stream) -> int:
    g = _read_graph(args.graph)
    pins = _parse_pins(args.pins, g.n)
    if not pins:
        raise CliError("bounds requires a nonempty --pins list")
    if len(pins) == g.n:
        raise CliError(
            "every node is pinned, so the bound formulas are inapplicable; "
            "the connectivity is exactly the gain (lambda_min = gain, "
            "see lambda_min_pinned)"
        )
    report = bounds.bounds_report(g, pins, args.gain, c=args.c)
    payload = _report_payload(report)
    payload["manifest"] = _manifest(
        "bounds",
        {"graph": args.graph, "pins": _labels(pins), "gain": args.gain, "c": args.c},
        args.seed,
        [],
    )
    _emit(payload, stream)
    return 0


def cmd_select(args, stream) -> int:
    g = _read_graph(args.graph)
    if (args.m is None) == (args.target_mu is None):
        raise CliError("give exactly one of --m or --target-mu")
    if args.target_mu is not None:
        if args.mode != "greedy":
            raise CliError("--target-mu is only available with --mode greedy")
        result = select.target_select(g, args.target_mu, args.gain)
    elif args.mode == "greedy":
        result = select.greedy_select(g, args.m, args.gain)
    elif args.mode == "optimal":
        result = select.optimal_select(g, args.m, args.gain, budget=_budget())
    elif args.mode in select.BASELINE_METHODS:
        result = select.baseline_select(g, args.m, args.mode, gain=args.gain)
    else:
        raise CliError(f"unknown selection mode {args.mode!r}")
    payload = {
        "mode": args.mode,
        "pins": _labels(result.pins),
        "scores": list(result.scores),
        "evaluations": result.evaluations,
        "report": _report_payload(result.report),
        "manifest": _manifest(
            "select",
            {
                "graph": args.graph,
                "mode": args.mode,
                "m": args.m,
                "target_mu": args.target_mu,
                "gain": args.gain,
            },
            args.seed,
            [],
        ),
    }
    _emit(payload, stream)
    return 0


def cmd_simulate(args, stream) -> int:
    g = _read_graph(args.graph)
    pins = _parse_pins(args.pins, g.n)
    if args.out is None:
        raise CliError("simulate requires --out PATH for the trace CSV")
    cfg = simulate.SimConfig(
        pins=pins,
        k=args.k,
        gain=args.gain,
        v_ref=args.v_ref,
        dt=args.dt,
        t_end=args.t_end,
        seed=args.seed,
    )
    trace = simulate.simulate_secondary(g, cfg)
    simulate.write_trace_csv(trace, args.out)
    g_prime = args.gain / args.k
    plan = spectral.PinningPlan.uniform(pins, g_prime, g.n)
    mu = spectral.lambda_min_pinned(g, plan)
    payload = {
        "pins": _labels(pins),
        "k": args.k,
        "gain": args.gain,
        "gain_prime": g_prime,
        "v_ref": args.v_ref,
        "dt": args.dt,
        "t_end": args.t_end,
        "lambda_min": mu,
        "predicted_rate": args.k * mu,
        "rate": trace.rate,
        "relay_ok": simulate.relay_window_ok(trace, args.v_ref, mu),
        "samples": int(trace.times.size),
        "manifest": _manifest(
            "simulate",
            {
                "graph": args.graph,
                "pins": _labels(pins),
                "k": args.k,
                "gain": args.gain,
                "v_ref": args.v_ref,
                "dt": args.dt,
                "t_end": args.t_end,
            },
            args.seed,
            [args.out],
        ),
    }
    _emit(payload, stream)
    return 0


def _parse_m_range(spec, n):
    if spec is None:
        return range(1, n + 1)
    parts = spec.split(":")
    try:
        if len(parts) == 1:
            lo = hi = int(parts[0])
        elif len(parts) == 2:
            lo, hi = int(parts[0]), int(parts[1])
        else:
            raise ValueError("too many ':'")
    except ValueError as exc:
        raise CliError(f"cannot parse --m-range {spec!r}: {exc}") from exc
    if not 1 <= lo <= hi <= n:
        raise CliError(f"--m-range {spec!r} outside [1, {n}]")
    return range(lo, hi + 1)


def _sweep_sets(g, mode, ms, gain):
    """Pinning set per m; nested across m so the exact value is monotone."""
    top = max(ms)
    if mode == "greedy":
        order = select.greedy_select(g, top, gain).pins
    elif mode == "optimal":
        return {
            m: select.optimal_select(g, m, gain, budget=_budget()).pins
            for m in ms
        }
    elif mode in select.BASELINE_METHODS:
        order = select.baseline_select(g, g.n, mode).pins
    else:
        raise CliError(f"unknown sweep mode {mode!r}")
    return {m: order[:m] for m in ms}


def cmd_sweep(args, stream) -> int:
    g = _read_graph(args.graph)
    ms = list(_parse_m_range(args.m_range, g.n))
    modes = [tok.strip() for tok in args.modes.split(",") if tok.strip()]
    if not modes:
        raise CliError("--modes must name at least one selection mode")
    lines = ["m,mode,mu_l,mu_exact,mu_u"]
    for mode in modes:
        sets = _sweep_sets(g, mode, ms, args.gain)
        for m in ms:
            report = bounds.bounds_report(g, sets[m], args.gain)
            lines.append(
                f"{m},{mode},{report.mu_l:.12g},{report.mu_exact:.12g},"
                f"{report.mu_u:.12g}"
            )
    csv_text = "\n".join(lines) + "\n"
    if args.out is None:
        stream.write(csv_text)
    else:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(csv_text)
        payload = {
            "rows": len(lines) - 1,
            "modes": modes,
            "manifest": _manifest(
                "sweep",
                {
                    "graph": args.graph,
                    "gain": args.gain,
                    "m_range": args.m_range,
                    "modes": modes,
                },
                args.seed,
                [args.out],
            ),
        }
        _emit(payload, stream)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pinctl",
        description="Pinning-node selection and pinned-connectivity analysis",
    )
    parser.add_argument("--version", action="version", version=f"pinctl {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--graph", required=True, help="graph JSON document")
        p.add_argument("--gain", type=float, default=100.0, help="pinning gain g")
        p.add_argument("--seed", type=int, default=0, help="seed for randomized defaults")

    p = sub.add_parser("bounds", help="bound report for one pinning set")
    common(p)
    p.add_argument("--pins", required=True, help="1-based labels, e.g. 1,4,14 or 'all'")
    p.add_argument("--c", type=float, default=1.0, help="coupling strength")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("select", help="run a pinning-set selection algorithm")
    common(p)
    p.add_argument(
        "--mode",
        default="greedy",
        choices=("greedy", "optimal") + select.BASELINE_METHODS,
    )
    p.add_argument("--m", type=int, help="number of nodes to pin")
    p.add_argument("--target-mu", type=float, help="target connectivity (greedy mode)")
    p.set_defaults(func=cmd_select)

    p = sub.add_parser("simulate", help="secondary voltage control run")
    common(p)
    p.add_argument("--pins", default="", help="1-based labels; empty or 'none' for unpinned")
    p.add_argument("--k", type=float, default=10.0, help="distributed controller gain")
    p.add_argument("--v-ref", type=float, default=380.0, help="reference voltage [Vrms]")
    p.add_argument("--dt", type=float, default=1e-4, help="integration step [s]")
    p.add_argument("--t-end", type=float, default=5.0, help="horizon [s]")
    p.add_argument("--out", required=True, help="trace CSV path")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep", help="bounds vs pinning-set size, CSV")
    common(p)
    p.add_argument("--m-range", help="e.g. 1:14; defaults to 1:N")
    p.add_argument("--modes", default="greedy", help="comma list of selection modes")
    p.add_argument("--out", help="CSV path; stdout when omitted")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, sys.stdout)
    except (CliError, ValueError, graph.GraphError) as exc:
        print(f"pinctl {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
