"""Command-line front end.

Subcommands:
  centrality   print node/degree/betweenness table for a topology
  run          sweep a single scenario file over a load grid
  preset       run one of the bundled hotspot studies

`run` and `preset` write results.csv (one row per scenario x load x
replication) and curves.csv (per-cell means), then print the mean
percent RBP/BBP difference of each scenario against the baseline.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .centrality import betweenness_centrality, degree_centrality
from .engine import SweepResult, avg_relative_delta, sweep
from .experiments import PRESET_IDS, preset, scale
from .topology import Topology, TopologyError, builtin_nsfnet, load_topology
from .traffic import ScenarioError, ScenarioSpec, load_scenario_spec

RESULTS_HEADER = ("scenario,load_erlang,replication,seed,requests,blocked,"
                  "rbp,bandwidth_requested_ghz,bandwidth_blocked_ghz,bbp")
CURVES_HEADER = "scenario,load_erlang,mean_rbp,mean_bbp"
DEFAULT_SEED = 20240917


class CliError(ValueError):
    pass


def _real(x: float) -> str:
    return f"{x:.10g}"


def _resolve_topology(source: str) -> Topology:
    if source == "nsfnet":
        return builtin_nsfnet()
    p = Path(source)
    if not p.exists():
        raise CliError(f"topology {source!r} is not a builtin name or a file")
    return load_topology(p)


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("EONSIM_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise CliError(f"EONSIM_SEED is not an integer: {env!r}") from None
    return DEFAULT_SEED


def _parse_loads(text: str) -> list[float]:
    """Either a comma list '5,10,15' or a range 'start:stop:step' (inclusive)."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise CliError(f"load range must be start:stop:step, got {text!r}")
        start, stop, step = (float(x) for x in parts)
        if step <= 0 or stop < start:
            raise CliError(f"bad load range {text!r}")
        loads = []
        v = start
        while v <= stop + 1e-9:
            loads.append(round(v, 9))
            v += step
    else:
        loads = [float(x) for x in text.split(",") if x.strip()]
    if not loads or any(v <= 0 for v in loads):
        raise CliError(f"loads must be a nonempty positive list, got {text!r}")
    return loads


def results_rows(result: SweepResult) -> list[str]:
    rows = [RESULTS_HEADER]
    rep_counter: dict[tuple[str, float], int] = {}
    for r in result.rows:
        key = (r.scenario, r.load_erlang)
        rep = rep_counter.get(key, 0)
        rep_counter[key] = rep + 1
        rows.append(",".join([
            r.scenario, _real(r.load_erlang), str(rep), str(r.seed),
            str(r.requests_total), str(r.requests_blocked), _real(r.rbp()),
            _real(r.bandwidth_requested_ghz), _real(r.bandwidth_blocked_ghz),
            _real(r.bbp()),
        ]))
    return rows


def curves_rows(result: SweepResult, scenario_order: list[str]) -> list[str]:
    agg = result.aggregate()
    rows = [CURVES_HEADER]
    for name in scenario_order:
        for (sc, load), (rbp, bbp) in sorted(agg.items(), key=lambda kv: kv[0][1]):
            if sc == name:
                rows.append(f"{sc},{_real(load)},{_real(rbp)},{_real(bbp)}")
    return rows


def _write(path: Path, rows: list[str]) -> None:
    path.write_text("\n".join(rows) + "\n")


def _emit_series(outdir: Path, result: SweepResult, scenario_order: list[str]) -> None:
    """Plot-ready two-column files, one per scenario and metric."""
    for name in scenario_order:
        for metric in ("rbp", "bbp"):
            curve = result.curve(name, metric)
            lines = [f"# {name} {metric.upper()} vs offered load (Erlang)"]
            lines += [f"{_real(nl)}\t{_real(v)}" for nl, v in sorted(curve.items())]
            _write(outdir / f"series_{name}_{metric}.dat", lines)


def _run_sweep(t: Topology, specs: list[ScenarioSpec], loads: list[float],
               args, out) -> int:
    n_requests, reps = scale(args.paper_scale)
    if args.requests is not None:
        n_requests = args.requests
    if args.reps is not None:
        reps = args.reps
    if n_requests < 1 or reps < 1:
        raise CliError("requests and reps must be >= 1")
    seed = _resolve_seed(args)
    result = sweep(t, specs, loads, n_requests, reps, seed,
                   warmup=args.warmup, metric=args.routing)

    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    order = [s.label() for s in specs]
    _write(outdir / "results.csv", results_rows(result))
    _write(outdir / "curves.csv", curves_rows(result, order))
    _emit_series(outdir, result, order)

    baseline_name = order[0]
    baseline_rbp = result.curve(baseline_name, "rbp")
    baseline_bbp = result.curve(baseline_name, "bbp")
    print(f"wrote {outdir / 'results.csv'} ({len(result.rows)} rows)", file=out)
    for name in order[1:]:
        try:
            d_rbp = avg_relative_delta(result.curve(name, "rbp"), baseline_rbp)
            d_bbp = avg_relative_delta(result.curve(name, "bbp"), baseline_bbp)
            print(f"{name} vs {baseline_name}: RBP {d_rbp:+.1f}%  BBP {d_bbp:+.1f}%",
                  file=out)
        except ValueError as exc:
            print(f"{name} vs {baseline_name}: not comparable ({exc})", file=out)
    return 0


def cmd_centrality(args, out=None) -> int:
    out = out or sys.stdout
    t = _resolve_topology(args.topology)
    deg = degree_centrality(t)
    bet = betweenness_centrality(t)
    rows = ["node,degree,betweenness"]
    print(f"{'node':>4}  {'degree':>6}  {'betweenness':>11}", file=out)
    for n in t.nodes():
        print(f"{n:>4}  {deg.values[n]:>6.0f}  {bet.values[n]:>11.4f}", file=out)
        rows.append(f"{n},{_real(deg.values[n])},{_real(bet.values[n])}")
    if args.csv:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        _write(outdir / "centrality.csv", rows)
        print(f"wrote {outdir / 'centrality.csv'}", file=out)
    return 0


def cmd_run(args, out=None) -> int:
    out = out or sys.stdout
    t = _resolve_topology(args.topology)
    spec = load_scenario_spec(args.scenario)
    if args.load_basis:
        spec = ScenarioSpec(spec.kind, spec.name, spec.hotspots, spec.p_hot,
                            spec.p_cold, spec.alpha, spec.load_erlang,
                            spec.mean_holding, spec.bandwidth_range,
                            args.load_basis)
    loads = _parse_loads(args.loads)
    uniform = ScenarioSpec("uniform", name="uniform", load_basis=spec.load_basis)
    specs = [uniform, spec] if spec.kind != "uniform" else [spec]
    return _run_sweep(t, specs, loads, args, out)


def cmd_preset(args, out=None) -> int:
    out = out or sys.stdout
    t = _resolve_topology(args.topology)
    study = preset(args.preset, t, load_basis=args.load_basis or "network")
    loads = _parse_loads(args.loads) if args.loads else list(study.loads)
    return _run_sweep(t, study.spec_list(), loads, args, out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eonsim",
        description="Elastic optical network blocking simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--topology", default="nsfnet",
                       help="builtin name or topology file path")
        p.add_argument("--out", default="out", help="output directory")

    p_cent = sub.add_parser("centrality", help="print centrality table")
    common(p_cent)
    p_cent.add_argument("--csv", action="store_true",
                        help="also write centrality.csv to --out")
    p_cent.set_defaults(func=cmd_centrality)

    def sweep_flags(p):
        common(p)
        p.add_argument("--requests", type=int, default=None,
                       help="arrivals per run (default: scale preset)")
        p.add_argument("--reps", type=int, default=None,
                       help="replications per cell (default: scale preset)")
        p.add_argument("--seed", type=int, default=None,
                       help="base seed (fallback: EONSIM_SEED, then builtin)")
        p.add_argument("--paper-scale", action="store_true",
                       help="100,000 requests x 5 replications")
        p.add_argument("--load-basis", choices=("network", "per_node"),
                       default=None, help="how NL maps to total arrival rate")
        p.add_argument("--warmup", type=int, default=0,
                       help="uncounted warm-up arrivals per run")
        p.add_argument("--routing", choices=("length", "hops"),
                       default="length", help="shortest-path metric")

    p_run = sub.add_parser("run", help="sweep one scenario file over loads")
    sweep_flags(p_run)
    p_run.add_argument("--scenario", required=True, help="scenario JSON file")
    p_run.add_argument("--loads", default="5:25:5",
                       help="comma list or start:stop:step (Erlang)")
    p_run.set_defaults(func=cmd_run)

    p_pre = sub.add_parser("preset", help="run a bundled hotspot study")
    sweep_flags(p_pre)
    p_pre.add_argument("--preset", required=True, choices=PRESET_IDS)
    p_pre.add_argument("--loads", default=None,
                       help="override the preset load grid")
    p_pre.set_defaults(func=cmd_preset)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CliError, TopologyError, ScenarioError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
