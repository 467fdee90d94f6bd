"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 data or validation error.
"""

from __future__ import annotations

import argparse
import configparser
import logging
import sys
from pathlib import Path

from . import reports
from .capacity import critical_rate, min_cut_histogram
from .centrality import edge_betweenness
from .energy import active_links_curve, energy_savings, savings_summary
from .generators import GenSpec, generate
from .graph import Topology, TopologyError
from .io import ParseError, ingest_rocketfuel, read_edge_list, write_edge_list
from .schemes import SCHEMES, PowerdownTrace, SchemeConfig, replay_trace, run_scheme
from .simulation import SimConfig, simulate

log = logging.getLogger("linksleep")


class DataError(Exception):
    """Bad input data; maps to exit code 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        values = [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    return values


def _load(path) -> Topology:
    try:
        return read_edge_list(path)
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc


def _trace_name(label: str, scheme: str, seed: int) -> str:
    return f"{label}_{scheme}_s{seed}"


# --- subcommands --------------------------------------------------------------


def cmd_generate(args) -> int:
    spec = GenSpec(args.family, args.nodes, args.edges, args.seed)
    topo = generate(spec)
    reports.write_atomic(args.out, write_edge_list(topo) + "\n")
    r0 = critical_rate(topo).r_c
    print(f"N={topo.node_count} M={topo.edge_count} R_0={r0!r}")
    return 0


def cmd_ingest(args) -> int:
    topo, rep = ingest_rocketfuel(args.input, backbone_only=args.backbone_only)
    reports.write_atomic(args.out, write_edge_list(topo) + "\n")
    for line in rep.lines():
        print(line)
    return 0


def powerdown(topo: Topology, label: str, scheme: str, seed: int, window: int, alpha: float,
              out_dir: Path, gnuplot: bool = False) -> PowerdownTrace:
    trace = run_scheme(topo, SchemeConfig(scheme, seed, window), alpha)
    trace.network = label
    if trace.h == 0:
        log.warning("input is already a spanning tree; trace is empty")
    name = _trace_name(label, trace.scheme, seed)
    reports.write_atomic(out_dir / f"{name}.trace.csv", trace.to_csv())
    meta = {"scheme": trace.scheme, "network": label, "seed": seed, "window": window}
    reports.write_atomic(out_dir / f"{name}.rc.csv", reports.rc_curve_csv(trace.curve(), meta))
    if gnuplot:
        reports.write_atomic(
            out_dir / f"{name}.rc.gp",
            reports.gnuplot_script(f"{name}.rc.csv", "links removed", "R_c", name),
        )
    return trace


def cmd_powerdown(args) -> int:
    topo = _load(args.input)
    if not topo.is_connected():
        raise DataError(f"{args.input}: topology is disconnected")
    label = args.label or Path(args.input).stem
    trace = powerdown(topo, label, args.scheme, args.seed, args.window, args.alpha,
                      Path(args.out), args.gnuplot)
    kappa = "" if trace.kappa is None else f" kappa={trace.kappa}"
    print(f"{label} {trace.scheme}: h={trace.h} R_0={trace.r0!r} R_h={trace.r_last!r}{kappa}")
    return 0


def report(traces: list[PowerdownTrace], out_dir: Path, grid_points: int = 100,
           gnuplot: bool = False) -> list[dict]:
    edge_counts: dict[str, int] = {}
    for tr in traces:
        seen = edge_counts.setdefault(tr.network, tr.edge_count)
        if seen != tr.edge_count:
            raise DataError(
                f"network {tr.network!r}: traces disagree on M ({seen} vs {tr.edge_count})"
            )
    energy = []
    for tr in traces:
        if tr.h == 0:
            log.warning("skipping empty trace %s/%s", tr.network, tr.scheme)
            continue
        energy.append(energy_savings(tr, grid_points=grid_points))
        name = _trace_name(tr.network, tr.scheme, tr.seed)
        curve = active_links_curve(tr, grid_points=grid_points)
        meta = {"scheme": tr.scheme, "network": tr.network, "seed": tr.seed}
        reports.write_atomic(out_dir / f"{name}.active.csv", reports.active_curve_csv(curve, meta))
        if gnuplot:
            reports.write_atomic(
                out_dir / f"{name}.active.gp",
                reports.gnuplot_script(f"{name}.active.csv", "load fraction", "active links", name),
            )
    energy.sort(key=lambda r: (r.network, SCHEMES.index(r.scheme), r.seed))
    reports.write_atomic(out_dir / "energy_report.csv", reports.energy_report_csv(energy))
    summary = savings_summary(energy)
    reports.write_atomic(out_dir / "summary.csv", reports.summary_csv(summary))
    return summary


def _print_summary(summary) -> None:
    print(f"{'network':<16}{'scheme':<8}{'runs':>5}  savings")
    for row in summary:
        print(
            f"{row['network']:<16}{row['scheme']:<8}{row['runs']:>5}  "
            f"{100 * row['mean']:5.1f}% +/- {100 * row['std']:.1f}"
        )


def cmd_report(args) -> int:
    traces = []
    for path in args.traces:
        try:
            traces.append(PowerdownTrace.from_csv(Path(path).read_text(encoding="utf-8")))
        except OSError as exc:
            raise DataError(f"cannot read {path}: {exc}") from exc
    summary = report(traces, Path(args.out), args.grid, args.gnuplot)
    _print_summary(summary)
    return 0


def cmd_simulate(args) -> int:
    if not args.grid:
        raise DataError("rate grid is empty")
    if args.steps <= 0:
        raise DataError("--steps must be positive")
    topo = _load(args.input)
    stats = []
    for rate in args.grid:
        for seed in args.seeds:
            stats.append(simulate(topo, SimConfig(rate, args.steps, args.warmup, seed)))
    reports.write_atomic(args.out, reports.sim_stats_csv(stats))
    print(f"{len(stats)} runs written to {args.out}")
    return 0


def cmd_mincut(args) -> int:
    topo = _load(args.input)
    trace = PowerdownTrace.from_csv(Path(args.trace).read_text(encoding="utf-8"))
    samples = []
    for k in args.indices:
        if not 0 <= k <= trace.h:
            raise DataError(f"removal index {k} outside 0..{trace.h}")
        samples.append((k, min_cut_histogram(replay_trace(topo, trace, k))))
    reports.write_atomic(args.out, reports.mincut_csv(samples))
    return 0


def cmd_betweenness(args) -> int:
    topo = _load(args.input)
    if args.trace:
        trace = PowerdownTrace.from_csv(Path(args.trace).read_text(encoding="utf-8"))
        topo = replay_trace(topo, trace, args.index)
    reports.write_atomic(args.out, edge_betweenness(topo).to_csv())
    return 0


# --- manifest -----------------------------------------------------------------


def _manifest_networks(cfg: configparser.ConfigParser, base: Path):
    """Yield ``(label, seed, topology)`` for every network instance."""
    for section in cfg.sections():
        if not section.startswith("network"):
            continue
        sec = cfg[section]
        label = sec.get("label", section.partition(" ")[2] or section)
        seeds = _int_list(sec.get("seeds", "0"))
        if "file" in sec:
            topo = _load(base / sec["file"])
            for seed in seeds:
                yield label, seed, topo
        else:
            for seed in seeds:
                spec = GenSpec(sec["family"], sec.getint("nodes"), sec.getint("edges"), seed)
                yield label, seed, generate(spec)


def cmd_run(args) -> int:
    cfg = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    path = Path(args.config)
    if not cfg.read(path, encoding="utf-8"):
        raise DataError(f"cannot read manifest {path}")
    exp = cfg["experiment"] if cfg.has_section("experiment") else cfg["DEFAULT"]
    schemes = [s.strip() for s in exp.get("schemes", ",".join(SCHEMES)).split(",") if s.strip()]
    window = exp.getint("window", 20)
    alpha = exp.getfloat("alpha", 1.0)
    grid = exp.getint("grid_points", 100)
    out_dir = Path(args.out or exp.get("out", "results"))
    if not out_dir.is_absolute() and not args.out:
        out_dir = path.parent / out_dir
    traces = []
    for label, seed, topo in _manifest_networks(cfg, path.parent):
        for scheme in schemes:
            traces.append(powerdown(topo, label, scheme, seed, window, alpha, out_dir / "traces"))
            log.info("%s seed %d %s done", label, seed, scheme)
    summary = report(traces, out_dir, grid)
    _print_summary(summary)
    return 0


# --- wiring -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="linksleep", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("generate", help="generate an ER or BA topology")
    p.add_argument("--family", choices=["er", "ba"], type=str.lower, required=True)
    p.add_argument("--nodes", type=int, required=True)
    p.add_argument("--edges", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="edge-list file to write")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("ingest", help="convert Rocketfuel .cch maps to an edge list")
    p.add_argument("input", help=".cch file or directory of them")
    p.add_argument("--backbone-only", action="store_true")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("powerdown", help="run a powerdown scheme")
    p.add_argument("input", help="edge-list file")
    p.add_argument("--scheme", choices=SCHEMES, type=str.lower, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--window", type=int, default=20)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--label", help="network label (defaults to the file stem)")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--gnuplot", action="store_true")
    p.set_defaults(func=cmd_powerdown)

    p = sub.add_parser("report", help="energy savings from trace files")
    p.add_argument("traces", nargs="+")
    p.add_argument("--grid", type=int, default=100, help="load grid points")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--gnuplot", action="store_true")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("simulate", help="packet-level simulation over a rate grid")
    p.add_argument("input")
    p.add_argument("--grid", type=_int_list, required=True, help="rates, e.g. 1,2,3,4")
    p.add_argument("--steps", type=int, default=4000)
    p.add_argument("--warmup", type=int, default=1000)
    p.add_argument("--seeds", type=_int_list, default=[0])
    p.add_argument("--out", required=True, help="stats CSV to write")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("mincut", help="min-cut histograms at chosen removal indices")
    p.add_argument("input")
    p.add_argument("trace")
    p.add_argument("--indices", type=_int_list, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_mincut)

    p = sub.add_parser("betweenness", help="edge betweenness CSV")
    p.add_argument("input")
    p.add_argument("--trace", help="replay this trace first")
    p.add_argument("--index", type=int, default=0, help="removals to replay")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_betweenness)

    p = sub.add_parser("run", help="run a full experiment manifest")
    p.add_argument("config", help="INI manifest")
    p.add_argument("--out", help="override the manifest output directory")
    p.set_defaults(func=cmd_run)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
    )
    try:
        return args.func(args)
    except (DataError, TopologyError, ParseError, ValueError, FileNotFoundError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
