"""Command-line front end.

Subcommands: ``spectrum``, ``energy``, ``run``, ``verify``, ``sweep``.
Exit codes: 0 on success (verdicts are data, not failures, except that
``verify`` exits 3 when an asserted safe bound fails), 2 on input or
validation errors, 3 on numeric errors.  Every output file starts with a
comment header carrying the tool version, the hash of the resolved config
and the seed; identical invocations produce byte-identical files.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .bounds import (
    SUITE_TOKENS,
    fit_log_energy_slope,
    run_suite,
    verify_prop_7_1,
)
from .config import (
    config_hash,
    load_run_config,
    load_sweep_config,
    resolve_graph_source,
)
from .energy import dirichlet_energy_edge_sum, dirichlet_energy_trace, rayleigh_quotient
from .errors import DegenerateSpectrumError, NumericError, ValidationError
from .graphs import augmented_normalized_laplacian
from .network import run_network
from .spectral import contraction_factors, eigendecompose
from .sweeps import duality_csv, duality_report, energy_increase_fraction, run_sweep, sweep_rows_csv

RANGE_LO = -1e-10
RANGE_HI = 2.0 - 1e-12


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _bool(b) -> str:
    if b is None:
        return ""
    return "true" if b else "false"


def _header(document: dict, seed) -> str:
    return (f"# gcn-energy {__version__}\n"
            f"# config-sha256: {config_hash(document)}\n"
            f"# seed: {seed}\n")


def _emit(out: str | None, text: str) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, newline="\n")


def _reports_csv(reports) -> str:
    lines = ["statement,context,lhs,rhs_paper,rhs_safe,margin,holds_paper,holds_safe,vacuous,asserted"]
    for r in reports:
        lines.append(",".join([
            r.statement,
            '"' + r.context.replace('"', "'") + '"',
            _fmt(r.lhs),
            _fmt(r.rhs_paper),
            "" if r.rhs_safe is None else _fmt(r.rhs_safe),
            _fmt(r.margin),
            _bool(r.holds_paper),
            _bool(r.holds_safe),
            _bool(r.vacuous),
            _bool(r.asserted),
        ]))
    return "\n".join(lines) + "\n"


def _cmd_spectrum(args) -> int:
    g = resolve_graph_source(args.graph)
    lap = augmented_normalized_laplacian(g)
    spectrum = eigendecompose(lap, zero_tol=args.zero_tol)
    doc = {"command": "spectrum", "graph": args.graph,
           "zero_tol": args.zero_tol, "n": g.n, "edges": g.edge_count}
    lines = [_header(doc, "-").rstrip("\n"), "index,eigenvalue"]
    lines += [f"{i},{_fmt(v)}" for i, v in enumerate(spectrum.eigenvalues)]
    try:
        cf = contraction_factors(spectrum)
        summary = (f"lambda_min_nonzero={_fmt(cf.lambda_min_nonzero)} "
                   f"lambda_bar_paper={_fmt(cf.lambda_bar_paper)} "
                   f"lambda_bar_safe={_fmt(cf.lambda_bar_safe)} "
                   f"kernel_dim={cf.kernel_dim}")
    except DegenerateSpectrumError:
        summary = f"degenerate spectrum: all {g.n} eigenvalues are zero within tolerance"
    lines.append(f"# {summary}")
    _emit(args.out, "\n".join(lines) + "\n")
    out = sys.stdout
    lo = float(spectrum.eigenvalues[0]) if spectrum.n else 0.0
    hi = float(spectrum.eigenvalues[-1]) if spectrum.n else 0.0
    if lo < RANGE_LO or hi > RANGE_HI:
        print(f"warning: eigenvalues [{_fmt(lo)}, {_fmt(hi)}] leave the expected "
              f"range [{_fmt(RANGE_LO)}, {_fmt(RANGE_HI)}]", file=out)
    print(f"graph: {args.graph} n={g.n} edges={g.edge_count}", file=out)
    print(summary, file=out)
    return 0


def _cmd_energy(args) -> int:
    g = resolve_graph_source(args.graph)
    lap = augmented_normalized_laplacian(g)
    rng = np.random.default_rng(args.seed)
    x = rng.standard_normal((g.n, args.channels))
    e_trace = dirichlet_energy_trace(x, lap)
    e_edge = dirichlet_energy_edge_sum(x, g)
    rq = rayleigh_quotient(x, lap)
    doc = {"command": "energy", "graph": args.graph,
           "channels": args.channels, "seed": args.seed}
    body = ("n,edges,channels,seed,energy_trace,energy_edge_sum,rayleigh\n"
            f"{g.n},{g.edge_count},{args.channels},{args.seed},"
            f"{_fmt(e_trace)},{_fmt(e_edge)},{_fmt(rq)}\n")
    _emit(args.out, _header(doc, args.seed) + body)
    print(f"dirichlet energy of a seeded Gaussian probe on {args.graph}: "
          f"trace={_fmt(e_trace)} edge_sum={_fmt(e_edge)} rayleigh={_fmt(rq)}")
    return 0


def _cmd_run(args) -> int:
    setup = load_run_config(args.config)
    spectrum = eigendecompose(augmented_normalized_laplacian(setup.graph))
    traj = run_network(setup.x0, setup.layers, spectrum, placement=setup.placement)
    lines = ["layer,energy,rayleigh,bound_paper,bound_safe,channels"]
    for rec in traj.records:
        lines.append(",".join([
            str(rec.layer), _fmt(rec.energy), _fmt(rec.rayleigh),
            _fmt(rec.bound_paper), _fmt(rec.bound_safe), str(rec.channels),
        ]))
    body = "\n".join(lines) + "\n"
    _emit(args.out, _header(setup.document, setup.seed) + body)
    rho_safe = max(rec.bound_safe for rec in traj.records[1:])
    rho_paper = max(rec.bound_paper for rec in traj.records[1:])
    slope = fit_log_energy_slope(traj.energies())
    e0 = traj.records[0].energy
    el = traj.records[-1].energy
    print(f"run: {args.config} layers={traj.depth} placement={setup.placement}")
    print(f"contractive: s*lambda_bar_safe = {_fmt(rho_safe)} < 1: "
          f"{'yes' if rho_safe < 1.0 else 'no'} (paper factor {_fmt(rho_paper)}); "
          f"fitted log-energy slope = {_fmt(slope)}")
    print(f"energy: E(X_0)={_fmt(e0)} E(X_{traj.depth})={_fmt(el)} "
          f"ratio={_fmt(el / e0) if e0 > 0 else 'nan'}")
    if args.mode == "prop71":
        verdict = verify_prop_7_1(setup.graph, setup.x0, setup.layers,
                                  setup.epsilon, setup.placement)
        if not verdict.ok:
            witness = "" if verdict.witness is None else f" witness x={_fmt(verdict.witness)}"
            print(f"prop71 verdict: preconditions FAILED: {verdict.reason}{witness}")
        else:
            print(f"prop71 verdict: preconditions ok (eps={_fmt(setup.epsilon)}); "
                  f"decay bound {'holds' if verdict.holds else 'FAILS'}")
    return 0


def _cmd_verify(args) -> int:
    tokens = list(SUITE_TOKENS) if args.suite == "all" else [args.suite]
    doc = {"command": "verify", "suite": args.suite,
           "trials": args.trials, "seed": args.seed}
    header = _header(doc, args.seed)
    out_dir = None
    if args.out is not None:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
    all_ok = True
    summary_blocks = []
    for token in tokens:
        result = run_suite(SUITE_TOKENS[token], args.trials, args.seed)
        all_ok = all_ok and result.ok
        if out_dir is not None:
            (out_dir / f"{token}.csv").write_text(
                header + _reports_csv(result.reports), newline="\n")
        summary_blocks.append("\n".join([f"suite: {token}"] + result.summary_lines()))
    summary = header + "\n\n".join(summary_blocks) + "\n"
    if out_dir is not None:
        (out_dir / "summary.txt").write_text(summary, newline="\n")
    sys.stdout.write(summary)
    if not all_ok:
        print("verify: at least one asserted safe bound FAILED", file=sys.stderr)
        return 3
    return 0


def _cmd_sweep(args) -> int:
    cfg = load_sweep_config(args.config)
    rows = run_sweep(cfg)
    doc = {
        "command": "sweep",
        "graph": cfg.source,
        "drop_ratios": list(cfg.drop_ratios),
        "boost_counts": list(cfg.boost_counts),
        "boost_factor": cfg.boost_factor,
        "trials": cfg.trials,
        "base_seed": cfg.base_seed,
        "probe": {"kind": cfg.probe.kind, "channels": cfg.probe.channels,
                  "seed": cfg.probe.seed},
    }
    meta = (f"# probe: {cfg.probe.kind} channels={cfg.probe.channels} seed={cfg.probe.seed}\n"
            f"# edge-selection: uniform without replacement (seeded)\n")
    _emit(args.out, _header(doc, cfg.base_seed) + meta + sweep_rows_csv(rows))
    if cfg.drop_ratios and cfg.boost_counts:
        entries = duality_report(rows)
        if args.out is not None:
            p = Path(args.out)
            dual_path = p.with_name(p.stem + ".duality" + (p.suffix or ".csv"))
            dual_path.write_text(_header(doc, cfg.base_seed) + duality_csv(entries),
                                 newline="\n")
            print(f"duality table written to {dual_path}")
        else:
            sys.stdout.write(duality_csv(entries))
    for op, present in (("drop", bool(cfg.drop_ratios)), ("boost", bool(cfg.boost_counts))):
        if not present:
            continue
        frac = energy_increase_fraction(rows, op)
        msg = f"fraction of {op} rows with increased probe energy: {_fmt(frac)}"
        if np.isnan(frac):
            msg = f"fraction of {op} rows with increased probe energy: n/a (no probe energies)"
        print(msg)
        if op == "drop" and not np.isnan(frac) and frac <= 0.5:
            print("warning: dropping edges increased the probe energy in at most "
                  "half of the rows")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gcn-energy",
        description="Dirichlet-energy contraction analysis for deep GCNs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("spectrum", help="eigenvalues and contraction factors of a graph")
    ps.add_argument("--graph", required=True, help="edge-list path or gen:<kind>:<args>")
    ps.add_argument("--zero-tol", type=float, default=None,
                    help="zero-eigenvalue classification tolerance (default: relative)")
    ps.add_argument("--out", help="output CSV path (default: stdout)")
    ps.set_defaults(func=_cmd_spectrum)

    pe = sub.add_parser("energy", help="Dirichlet energy of a seeded Gaussian probe")
    pe.add_argument("--graph", required=True, help="edge-list path or gen:<kind>:<args>")
    pe.add_argument("--channels", type=int, default=4)
    pe.add_argument("--seed", type=int, default=0)
    pe.add_argument("--out", help="output CSV path (default: stdout)")
    pe.set_defaults(func=_cmd_energy)

    pr = sub.add_parser("run", help="simulate a deep GCN and record its energy trajectory")
    pr.add_argument("--config", required=True, help="run config JSON path")
    pr.add_argument("--mode", choices=("trajectory", "prop71"), default="trajectory",
                    help="prop71 additionally checks the monotone-filter decay bound")
    pr.add_argument("--out", help="trajectory CSV path (default: stdout)")
    pr.set_defaults(func=_cmd_run)

    pv = sub.add_parser("verify", help="run seeded random suites for the energy bounds")
    pv.add_argument("--suite", choices=tuple(SUITE_TOKENS) + ("all",), default="all")
    pv.add_argument("--trials", type=int, default=100)
    pv.add_argument("--seed", type=int, default=0)
    pv.add_argument("--out", help="output directory for per-suite CSVs and summary.txt")
    pv.set_defaults(func=_cmd_verify)

    pw = sub.add_parser("sweep", help="edge drop/boost perturbation sweep")
    pw.add_argument("--config", required=True, help="sweep config JSON path")
    pw.add_argument("--out", help="rows CSV path (default: stdout)")
    pw.set_defaults(func=_cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return 3


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
