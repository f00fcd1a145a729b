"""Command-line surface: simulate scenario data, estimate correlation tracks
from CSV, run Monte Carlo benchmarks, and plot tracks as SVG.

Exit codes: 0 success, 1 usage error, 2 data error (unreadable or invalid
input), 3 internal numerical failure.  All CSV output uses '.' decimals,
'\\n' line endings and full-precision floats, so a written file reproduces
the in-memory values exactly when read back.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from pathlib import Path

from .core import (
    DEFAULT_WINDOW,
    BivariateSeries,
    CorrelationTrack,
    InvalidInputError,
    NumericalFailure,
)
from .garch import CONVERGED, dcc_track
from .metrics import max_abs, mc_run, mean_abs
from .sim import DESIGN_NAMES, SimDesign, design_profile, generate
from .sliding import sw_track
from .svg import Curve, render_chart
from .visibility import wvga_track

METHOD_CHOICES = ("sw", "wvga", "dcc", "all")

_PLOT_COLORS = {"rho_sw": "blue", "rho_wvga": "magenta", "rho_dcc": "green"}
_FALLBACK_COLORS = ("orange", "purple", "brown", "teal")


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on bad flags; route through UsageError
    # so the documented usage exit code (1) applies
    def error(self, message):
        raise UsageError(message)


def _fmt(v: float) -> str:
    """Shortest decimal string that round-trips to the same float."""
    return repr(float(v))


def _write_csv(path: Path, header: list[str], rows) -> None:
    try:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(rows)
    except OSError as exc:
        raise DataError(f"cannot write {path}: {exc}") from exc


def _write_json(path: Path, payload: dict) -> None:
    try:
        with open(path, "w") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    except OSError as exc:
        raise DataError(f"cannot write {path}: {exc}") from exc


def _read_csv(path: Path) -> tuple[list[str], list[list[str]]]:
    try:
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            rows = [row for row in reader if row]
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    if len(rows) < 2:
        raise DataError(f"{path}: need a header row and at least one data row")
    return rows[0], rows[1:]


def _column(header: list[str], rows: list[list[str]], name: str, path: Path) -> list[str]:
    try:
        idx = header.index(name)
    except ValueError:
        raise DataError(f"{path}: no column named {name!r}") from None
    return [row[idx] if idx < len(row) else "" for row in rows]


def _floats(cells: list[str], name: str, path: Path) -> list[float]:
    out = []
    for i, cell in enumerate(cells, start=2):
        try:
            out.append(float(cell))
        except ValueError:
            raise DataError(
                f"{path}: non-numeric value {cell!r} in column {name!r}, line {i}"
            ) from None
    return out


def cmd_simulate(args) -> int:
    design = SimDesign(
        profile=design_profile(args.design),
        dist=args.dist,
        t_len=args.t_len,
        seed=args.seed,
    )
    series = generate(design)
    p = design.profile.sample(design.t_len)
    rows = (
        [t, _fmt(x1), _fmt(x2), _fmt(pt)]
        for t, x1, x2, pt in zip(
            range(1, design.t_len + 1),
            series.first.values,
            series.second.values,
            p,
        )
    )
    _write_csv(Path(args.out), ["t", "x1", "x2", "p_true"], rows)
    return 0


def _selected_methods(method: str) -> list[str]:
    return ["sw", "wvga", "dcc"] if method == "all" else [method]


def _track_summary(track: CorrelationTrack) -> dict:
    defined = track.defined_values()
    if defined.size == 0:
        return {"mean_abs": None, "max_abs": None, "n_missing": track.n_missing()}
    return {
        "mean_abs": mean_abs(track),
        "max_abs": max_abs(track),
        "n_missing": track.n_missing(),
    }


def _estimate_pair(series: BivariateSeries, methods: list[str], ws: int):
    """Run the selected estimators; returns (tracks by method, sidecar info)."""
    tracks: dict[str, CorrelationTrack | None] = {}
    info: dict[str, dict] = {}
    for m in methods:
        if m == "sw":
            tracks[m] = sw_track(series, ws)
            info[m] = _track_summary(tracks[m])
        elif m == "wvga":
            tracks[m] = wvga_track(series, ws)
            info[m] = _track_summary(tracks[m])
        else:
            report = dcc_track(series)
            tracks[m] = report.track
            entry: dict = {"status": report.status}
            if report.status == CONVERGED:
                entry.update(_track_summary(report.track))
            info[m] = entry
    return tracks, info


def _write_track_csv(path: Path, t_len: int, methods: list[str], tracks: dict) -> None:
    header = ["t"] + [f"rho_{m}" for m in methods]
    cells = {m: [""] * t_len for m in methods}
    for m in methods:
        track = tracks[m]
        if track is None:
            continue
        for t, v in track.items():
            if v is not None:
                cells[m][t - 1] = _fmt(v)
    rows = (
        [t] + [cells[m][t - 1] for m in methods] for t in range(1, t_len + 1)
    )
    _write_csv(path, header, rows)


def _pair_out_path(base: Path, col_a: str, col_b: str) -> Path:
    return base.with_name(f"{base.stem}_{col_a}_{col_b}{base.suffix}")


def cmd_estimate(args) -> int:
    path = Path(args.input)
    header, rows = _read_csv(path)
    # 't' is the time index this tool writes, not a data series
    data_cols = [name for name in header if name != "t"]
    if len(data_cols) < 2:
        raise DataError(f"{path}: need at least two data columns")
    methods = _selected_methods(args.method)

    if args.pairs == "all":
        pairs = [
            (data_cols[i], data_cols[j])
            for i in range(len(data_cols))
            for j in range(i + 1, len(data_cols))
        ]
    elif args.cols:
        parts = [c.strip() for c in args.cols.split(",")]
        if len(parts) != 2 or not all(parts):
            raise UsageError("--cols expects two comma-separated column names")
        pairs = [(parts[0], parts[1])]
    else:
        pairs = [(data_cols[0], data_cols[1])]

    out_base = Path(args.out)
    multi = len(pairs) > 1
    for col_a, col_b in pairs:
        x = _floats(_column(header, rows, col_a, path), col_a, path)
        y = _floats(_column(header, rows, col_b, path), col_b, path)
        series = BivariateSeries(x, y)
        tracks, info = _estimate_pair(series, methods, args.window)
        out_path = _pair_out_path(out_base, col_a, col_b) if multi else out_base
        _write_track_csv(out_path, series.t_len, methods, tracks)
        sidecar = {
            "input": str(path),
            "columns": [col_a, col_b],
            "window": args.window,
            "t_len": series.t_len,
            "methods": info,
        }
        _write_json(out_path.with_suffix(".json"), sidecar)
    return 0


def _stats_dict(stats) -> dict | None:
    if stats is None:
        return None
    return {"mean": stats.mean, "sd": stats.sd, "median": stats.median}


def cmd_bench(args) -> int:
    methods = []
    for m in args.methods.split(","):
        m = m.strip()
        if m not in ("sw", "wvga", "dcc"):
            raise UsageError(f"unknown method {m!r} in --methods")
        if m not in methods:
            methods.append(m)
    if not methods:
        raise UsageError("--methods must name at least one method")

    design = SimDesign(
        profile=design_profile(args.design),
        dist=args.dist,
        t_len=args.t_len,
        seed=args.seed,
    )
    started = time.perf_counter()
    per_method = {}
    for m in methods:
        summary = mc_run(design, m, ws=args.window, n_reps=args.reps)
        per_method[m] = {
            "n_reps": summary.n_reps,
            "n_converged": summary.n_converged,
            "dnc": summary.dnc,
            "mean_abs": _stats_dict(summary.mean_abs),
            "max_abs": _stats_dict(summary.max_abs),
            "mse": _stats_dict(summary.mse),
        }
    report = {
        "design": args.design,
        "dist": args.dist,
        "t_len": args.t_len,
        "window": args.window,
        "seed": args.seed,
        "reps": args.reps,
        "wall_time_s": time.perf_counter() - started,
        "methods": per_method,
    }
    _write_json(Path(args.out), report)
    return 0


def _parse_track_columns(path: Path):
    header, rows = _read_csv(path)
    if header[0] != "t":
        raise DataError(f"{path}: expected first column 't'")
    t_vals = _floats(_column(header, rows, "t", path), "t", path)
    curves = []
    palette = iter(_FALLBACK_COLORS)
    for name in header[1:]:
        cells = _column(header, rows, name, path)
        points = []
        for t, cell in zip(t_vals, cells):
            if cell.strip() == "":
                points.append((t, None))
            else:
                try:
                    points.append((t, float(cell)))
                except ValueError:
                    raise DataError(
                        f"{path}: non-numeric value {cell!r} in column {name!r}"
                    ) from None
        color = _PLOT_COLORS.get(name) or next(palette, "gray")
        curves.append(Curve(name, color, points))
    if not curves:
        raise DataError(f"{path}: no track columns found")
    return curves


def _parse_truth(path: Path) -> Curve:
    header, rows = _read_csv(path)
    name = "p_true" if "p_true" in header else header[1]
    t_vals = _floats(_column(header, rows, header[0], path), header[0], path)
    p_vals = _floats(_column(header, rows, name, path), name, path)
    return Curve("truth", "black", list(zip(t_vals, p_vals)))


def cmd_plot(args) -> int:
    curves = _parse_track_columns(Path(args.input))
    if args.truth:
        curves.append(_parse_truth(Path(args.truth)))
    doc = render_chart(curves)
    try:
        Path(args.out).write_text(doc + "\n")
    except OSError as exc:
        raise DataError(f"cannot write {args.out}: {exc}") from exc
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="dyncorr",
        description="Time-varying correlation estimation and benchmarks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="generate scenario data as CSV")
    p_sim.add_argument("--design", required=True, choices=DESIGN_NAMES)
    p_sim.add_argument("--dist", required=True, choices=("normal", "cauchy"))
    p_sim.add_argument("--t-len", type=int, required=True)
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.add_argument("--out", required=True)
    p_sim.set_defaults(func=cmd_simulate)

    p_est = sub.add_parser("estimate", help="estimate correlation tracks from CSV")
    p_est.add_argument("--input", required=True)
    p_est.add_argument(
        "--cols",
        help="two column names, e.g. x1,x2 (default: first two data columns)",
    )
    p_est.add_argument(
        "--pairs", choices=("all",), help="run every pair of data columns"
    )
    p_est.add_argument("--method", default="all", choices=METHOD_CHOICES)
    p_est.add_argument("--window", type=int, default=DEFAULT_WINDOW)
    p_est.add_argument("--out", required=True)
    p_est.set_defaults(func=cmd_estimate)

    p_bench = sub.add_parser("bench", help="Monte Carlo benchmark to JSON")
    p_bench.add_argument("--design", required=True, choices=DESIGN_NAMES)
    p_bench.add_argument("--dist", required=True, choices=("normal", "cauchy"))
    p_bench.add_argument("--t-len", type=int, required=True)
    p_bench.add_argument("--reps", type=int, required=True)
    p_bench.add_argument("--methods", default="sw,wvga,dcc")
    p_bench.add_argument("--window", type=int, default=DEFAULT_WINDOW)
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--out", required=True)
    p_bench.set_defaults(func=cmd_bench)

    p_plot = sub.add_parser("plot", help="render a track CSV as an SVG chart")
    p_plot.add_argument("--input", required=True)
    p_plot.add_argument("--truth", help="CSV with a p_true column to overlay")
    p_plot.add_argument("--out", required=True)
    p_plot.set_defaults(func=cmd_plot)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (DataError, InvalidInputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
