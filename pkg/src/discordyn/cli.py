"""Command-line front end: simulate, figure presets, parameter sweeps.

Artifacts are a CSV of the measure curves, a key = value event summary, and
an optional SVG plot.  Exit codes: 0 success, 2 config error, 3 numerical
abort, 4 I/O failure.
"""

import argparse
import csv
import io
import os
import sys
import tempfile

import numpy as np

from .analysis import run_config, sweep
from .config import ConfigError, parse_config
from .dynamics import IntegrationError
from .figures import PRESETS, event_tolerance, get_preset

CSV_HEADER = "t_gamma0,discord,eof,concurrence,trace_error,min_eigenvalue"


def _fmt(x):
    if x is None:
        return "none"
    return f"{x + 0.0:.12g}"  # + 0.0 normalizes negative zero


def _atomic_write_text(path, text):
    path = os.fspath(path)
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".part")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
        os.chmod(tmp, 0o644)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def series_csv_text(result):
    traj = result.trajectory
    s = result.series
    lines = [CSV_HEADER]
    for i in range(len(s.t)):
        lines.append(
            f"{s.t[i] + 0.0:.12g},{s.d[i] + 0.0:.12g},{s.e[i] + 0.0:.12g},"
            f"{s.c[i] + 0.0:.12g},{traj.trace_error[i] + 0.0:.12g},"
            f"{traj.min_eigenvalue[i] + 0.0:.12g}"
        )
    return "\n".join(lines) + "\n"


def events_text(result):
    rep = result.report
    lines = [
        f"t_cri = {_fmt(rep.t_cri)}",
        f"t_esd = {_fmt(rep.t_esd)}",
        "crossings = " + ",".join(_fmt(x) for x in rep.crossings),
        f"esd_threshold = {_fmt(rep.esd_threshold)}",
        f"window_end = {_fmt(rep.window_end)}",
    ]
    gap = result.series.gap_x_vs_oracle
    if gap is not None:
        lines.append(f"discord_gap_max = {_fmt(float(np.nanmax(gap)))}")
    return "\n".join(lines) + "\n"


def _emit(result, csv_path, events_path, plot_path, title=None):
    _atomic_write_text(csv_path, series_csv_text(result))
    _atomic_write_text(events_path, events_text(result))
    if plot_path:
        from .plotting import plot_series

        plot_series(result.series, plot_path, title=title)
    sys.stdout.write(events_text(result))


def _cmd_simulate(args):
    cfg = parse_config(args.config)
    stem = os.path.splitext(os.path.basename(args.config))[0]
    csv_path = args.csv or cfg.output_csv or f"{stem}.csv"
    events_path = args.events or cfg.output_events or f"{stem}_events.txt"
    if args.plot is None:
        plot_path = cfg.output_plot
    elif args.plot is True:
        plot_path = cfg.output_plot or f"{stem}.svg"
    else:
        plot_path = args.plot
    result = run_config(cfg)
    _emit(result, csv_path, events_path, plot_path, title=stem)
    return 0


def _cmd_figure(args):
    if args.list:
        for pid in sorted(PRESETS):
            c = PRESETS[pid].config
            sys.stdout.write(
                f"{pid}: state={c.initial_state} lambda={c.lam:g} "
                f"delta={c.delta:g} theta={c.theta:g} t_max={c.t_max:g}\n"
            )
        return 0
    if not args.id:
        raise ConfigError("a preset id is required (or use --list)")
    preset = get_preset(args.id)
    os.makedirs(args.outdir, exist_ok=True)
    csv_path = os.path.join(args.outdir, f"{preset.id}.csv")
    events_path = os.path.join(args.outdir, f"{preset.id}_events.txt")
    plot_path = None if args.no_plot else os.path.join(args.outdir, f"{preset.id}.svg")
    result = run_config(preset.config)
    _emit(result, csv_path, events_path, plot_path, title=preset.id)
    if preset.expected_events:
        for name, expected in sorted(preset.expected_events.items()):
            got = getattr(result.report, name)
            tol = event_tolerance(expected)
            if got is None:
                verdict = "FAIL (not detected)"
            else:
                verdict = "PASS" if abs(got - expected) <= tol else "FAIL"
            sys.stdout.write(
                f"{preset.id} {name}: expected {expected:g} (tol {tol:.3g}) "
                f"got {_fmt(got)}  {verdict}\n"
            )
    return 0


def _cmd_sweep(args):
    cfg = parse_config(args.config)
    try:
        values = [float(v) for v in args.values.split(",") if v.strip() != ""]
    except ValueError as exc:
        raise ConfigError(f"bad --values list: {exc}") from exc
    rows = sweep(cfg, args.vary, values)
    stem = os.path.splitext(os.path.basename(args.config))[0]
    out_path = args.output or f"{stem}_sweep.csv"

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["value", "t_cri", "t_esd", "final_discord", "final_eof", "error"])
    for row in rows:
        if row.error is None:
            writer.writerow(
                [
                    _fmt(row.value),
                    _fmt(row.report.t_cri) if row.report.t_cri is not None else "",
                    _fmt(row.report.t_esd) if row.report.t_esd is not None else "",
                    _fmt(row.final_discord),
                    _fmt(row.final_eof),
                    "",
                ]
            )
        else:
            writer.writerow([_fmt(row.value), "", "", "", "", row.error])
    _atomic_write_text(out_path, buf.getvalue())

    failures = sum(1 for row in rows if row.error is not None)
    for row in rows:
        status = row.error if row.error else (
            f"t_cri={_fmt(row.report.t_cri)} t_esd={_fmt(row.report.t_esd)}"
        )
        sys.stdout.write(f"{args.vary}={row.value:g}: {status}\n")
    if rows and failures == len(rows):
        sys.stderr.write("sweep: every row failed\n")
        return 3
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="discordyn",
        description="Two-qubit dissipative dynamics with discord and "
        "entanglement tracking.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="run one configuration file")
    p_sim.add_argument("config", help="key = value configuration file")
    p_sim.add_argument("--csv", help="series output path (default <config stem>.csv)")
    p_sim.add_argument("--events", help="event summary path")
    p_sim.add_argument(
        "--plot",
        nargs="?",
        const=True,
        default=None,
        metavar="PATH",
        help="also render an SVG plot (optional path)",
    )
    p_sim.set_defaults(func=_cmd_simulate)

    p_fig = sub.add_parser("figure", help="run a built-in preset")
    p_fig.add_argument("id", nargs="?", help="preset id, e.g. fig1a")
    p_fig.add_argument("--outdir", default=".", help="artifact directory")
    p_fig.add_argument("--no-plot", action="store_true", help="skip the SVG plot")
    p_fig.add_argument("--list", action="store_true", help="list preset ids")
    p_fig.set_defaults(func=_cmd_figure)

    p_sweep = sub.add_parser("sweep", help="repeat a run over parameter values")
    p_sweep.add_argument("config", help="base configuration file")
    p_sweep.add_argument("--vary", required=True, help="parameter to vary")
    p_sweep.add_argument("--values", required=True, help="comma-separated values")
    p_sweep.add_argument("--output", help="sweep table path")
    p_sweep.set_defaults(func=_cmd_sweep)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        sys.stderr.write(f"config error: {exc}\n")
        return 2
    except IntegrationError as exc:
        sys.stderr.write(f"integration abort: {exc}\n")
        return 3
    except OSError as exc:
        sys.stderr.write(f"i/o error: {exc}\n")
        return 4


if __name__ == "__main__":
    sys.exit(main())
