"""Command line front end.

Subcommands: point, scan, boundary, max-rescaled, limit-curve,
oracle-check.  Records stream to stdout or --out as CSV (default) or
JSON; the scan schema is the fixed header n,j,delta,b,t,c,c_r,eof with 12
significant digits.  JSON files carry {"config": ..., "records": ...} so
a run can be reproduced from its own output.

A --config file holds key=value pairs (one per line, # comments) that act
as defaults; explicit flags override them.  Exit codes: 0 success, 2
invalid input, 3 numerical failure (oracle mismatch included).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import entanglement, oracle, scans
from .errors import ConsistencyError, DomainError, NumericalError, SpinClusterError
from .scans import Axis, GridSpec, ScanRecord
from .sectors import ClusterSpec
from .thermo import Temperature

__all__ = [
    "RunConfig",
    "main",
    "entry",
    "records_to_csv",
    "records_to_json",
    "read_records_json",
    "read_records_csv",
]

CSV_HEADER = ("n", "j", "delta", "b", "t", "c", "c_r", "eof")


@dataclass(frozen=True)
class RunConfig:
    """Everything one invocation needs: command, parameters, output knobs."""

    command: str
    options: dict = field(default_factory=dict)
    out: Optional[str] = None
    format: str = "csv"
    quiet: bool = False
    threads: int = 1

    def echo(self) -> dict:
        safe = {}
        for key, value in self.options.items():
            if isinstance(value, (list, tuple)):
                safe[key] = list(value)
            else:
                safe[key] = value
        return {
            "command": self.command,
            **safe,
            "format": self.format,
            "out": self.out,
            "quiet": self.quiet,
            "threads": self.threads,
        }


# --------------------------------------------------------------------------
# serialization
# --------------------------------------------------------------------------


def _fmt(value: float) -> str:
    return f"{value:.12g}"


def records_to_csv(records: Sequence[ScanRecord], stream) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in records:
        writer.writerow(
            [r.n, _fmt(r.j), _fmt(r.delta), _fmt(r.b), _fmt(r.t), _fmt(r.c), _fmt(r.c_r), _fmt(r.eof)]
        )


def records_to_json(config: RunConfig, records: Sequence[ScanRecord], stream) -> None:
    payload = {"config": config.echo(), "records": [asdict(r) for r in records]}
    json.dump(payload, stream, indent=1)
    stream.write("\n")


def read_records_json(path: str):
    """(config_echo, records) back from a JSON records file."""
    with open(path) as fh:
        payload = json.load(fh)
    records = [ScanRecord(**row) for row in payload["records"]]
    return payload.get("config", {}), records


def read_records_csv(path: str) -> list[ScanRecord]:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = tuple(next(reader))
        if header != CSV_HEADER:
            raise DomainError(f"unexpected CSV header {header!r}")
        return [
            ScanRecord(
                int(row[0]),
                *(float(x) for x in row[1:]),
            )
            for row in reader
        ]


def _write_rows(cfg: RunConfig, header: Sequence[str], rows, json_key: str, json_rows) -> None:
    """Table output for the non-scan commands, honoring --format/--out."""
    if cfg.format == "json":
        payload = {"config": cfg.echo(), json_key: json_rows}
        text_io = io.StringIO()
        json.dump(payload, text_io, indent=1)
        text_io.write("\n")
        text = text_io.getvalue()
    else:
        text_io = io.StringIO()
        writer = csv.writer(text_io, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow(row)
        text = text_io.getvalue()
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_records(cfg: RunConfig, records: Sequence[ScanRecord]) -> None:
    if cfg.out:
        with open(cfg.out, "w") as fh:
            if cfg.format == "json":
                records_to_json(cfg, records, fh)
            else:
                records_to_csv(records, fh)
        if not cfg.quiet:
            print(f"wrote {len(records)} records to {cfg.out}")
    else:
        if cfg.format == "json":
            records_to_json(cfg, records, sys.stdout)
        else:
            records_to_csv(records, sys.stdout)


# --------------------------------------------------------------------------
# argument parsing
# --------------------------------------------------------------------------


def _parse_axis(text: str) -> Axis:
    parts = str(text).split(":")
    if len(parts) != 4:
        raise DomainError(f"axis must look like name:lo:hi:steps, got {text!r}")
    name, lo, hi, steps = parts
    try:
        return Axis(name, float(lo), float(hi), int(steps))
    except ValueError as exc:
        raise DomainError(f"bad axis {text!r}: {exc}") from None


def _parse_range(text: str) -> np.ndarray:
    parts = str(text).split(":")
    if len(parts) != 3:
        raise DomainError(f"grid must look like lo:hi:steps, got {text!r}")
    try:
        lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise DomainError(f"bad grid {text!r}: {exc}") from None
    if steps < 2 or not (math.isfinite(lo) and math.isfinite(hi)) or lo > hi:
        raise DomainError(f"bad grid {text!r}: need finite lo <= hi and steps >= 2")
    return np.linspace(lo, hi, steps)


def _parse_n_list(text: str) -> list[int]:
    out: list[int] = []
    for piece in str(text).split(","):
        piece = piece.strip()
        if not piece:
            continue
        if ":" in piece:
            try:
                lo, hi = (int(x) for x in piece.split(":", 1))
            except ValueError:
                raise DomainError(f"bad n range {piece!r}") from None
            if lo > hi:
                raise DomainError(f"bad n range {piece!r}: lo > hi")
            out.extend(range(lo, hi + 1))
        else:
            try:
                out.append(int(piece))
            except ValueError:
                raise DomainError(f"bad n value {piece!r}") from None
    if not out:
        raise DomainError(f"empty n list {text!r}")
    return out


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", metavar="FILE", help="key=value defaults, flags override")
    p.add_argument("--out", metavar="PATH", help="write output to PATH instead of stdout")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--quiet", action="store_true", help="suppress the human summary")
    p.add_argument("--threads", type=int, default=1, help="worker threads for scans")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spincluster",
        description="Exact thermal pairwise entanglement in uniformly coupled spin-1/2 clusters.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("point", help="one cluster at one temperature")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--j", type=float, required=True)
    p.add_argument("--delta", type=float, default=0.0)
    p.add_argument("--b", type=float, default=0.0)
    p.add_argument("--t", type=float, required=True)
    _add_common(p)

    p = sub.add_parser("scan", help="1- or 2-axis sweep emitting one record per point")
    p.add_argument("--axis1", required=True, metavar="NAME:LO:HI:STEPS")
    p.add_argument("--axis2", metavar="NAME:LO:HI:STEPS")
    p.add_argument("--n", type=int)
    p.add_argument("--j", type=float)
    p.add_argument("--delta", type=float)
    p.add_argument("--b", type=float)
    p.add_argument("--t", type=float)
    _add_common(p)

    p = sub.add_parser("boundary", help="threshold temperature along B or delta")
    p.add_argument("--control", required=True, metavar="NAME:LO:HI:STEPS")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--j", type=float, required=True)
    p.add_argument("--delta", type=float, default=0.0)
    p.add_argument("--b", type=float, default=0.0)
    p.add_argument("--t-max", type=float, default=2.0)
    _add_common(p)

    p = sub.add_parser("max-rescaled", help="max of (N-1)C over the B-T plane at J=1, Delta=0")
    p.add_argument("--n", type=int)
    p.add_argument("--n-list", metavar="LIST", help="e.g. 2,3,4 or 2:28")
    p.add_argument("--b-grid", default="0:3:200", metavar="LO:HI:STEPS")
    p.add_argument("--t-grid", default="0.005:2:200", metavar="LO:HI:STEPS")
    _add_common(p)

    p = sub.add_parser("limit-curve", help="(N-1)C over a delta grid for several N")
    p.add_argument("--delta-grid", default="-2:0:41", metavar="LO:HI:STEPS")
    p.add_argument("--n-list", default="10,20,40", metavar="LIST")
    p.add_argument("--t", type=float, default=0.01)
    p.add_argument("--j", type=float, default=-1.0)
    _add_common(p)

    p = sub.add_parser("oracle-check", help="engine vs brute force on random points")
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--points", type=int, default=200)
    p.add_argument("--seed", type=int, default=42)
    _add_common(p)

    return parser


def _apply_config_file(argv: list[str]) -> list[str]:
    """Insert flags from a --config file right after the subcommand."""
    path = None
    for i, token in enumerate(argv):
        if token == "--config" and i + 1 < len(argv):
            path = argv[i + 1]
            break
        if token.startswith("--config="):
            path = token.split("=", 1)[1]
            break
    if path is None:
        return argv
    extra: list[str] = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise DomainError(f"config line must be key=value, got {line!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            flag = "--" + key.replace("_", "-")
            if key == "quiet":
                if value.lower() in ("1", "true", "yes", "on"):
                    extra.append(flag)
                continue
            extra.extend([flag, value])
    cmd_at = next((i for i, tok in enumerate(argv) if not tok.startswith("-")), None)
    if cmd_at is None:
        return argv
    return argv[: cmd_at + 1] + extra + argv[cmd_at + 1 :]


# --------------------------------------------------------------------------
# command bodies
# --------------------------------------------------------------------------


def _cfg_from_args(args: argparse.Namespace) -> RunConfig:
    skip = {"command", "config", "out", "format", "quiet", "threads"}
    options = {k: v for k, v in vars(args).items() if k not in skip}
    return RunConfig(
        command=args.command,
        options=options,
        out=args.out,
        format=args.format,
        quiet=args.quiet,
        threads=args.threads,
    )


def _cmd_point(cfg: RunConfig) -> int:
    o = cfg.options
    record = scans.point_record(o["n"], o["j"], o["delta"], o["b"], o["t"])
    if not record.valid:
        raise DomainError(
            f"invalid point: n={o['n']}, j={o['j']}, t={o['t']} (need integer n >= 2, j != 0, t >= 0)"
        )
    if not cfg.quiet:
        print(f"C = {_fmt(record.c)}  C_r = {_fmt(record.c_r)}  Eof = {_fmt(record.eof)}")
    if cfg.out:
        _emit_records(RunConfig(cfg.command, cfg.options, cfg.out, cfg.format, True, 1), [record])
    return 0


def _cmd_scan(cfg: RunConfig) -> int:
    o = cfg.options
    axis1 = _parse_axis(o["axis1"])
    axis2 = _parse_axis(o["axis2"]) if o.get("axis2") else None
    fixed = {k: o[k] for k in ("n", "j", "delta", "b", "t") if o.get(k) is not None}
    grid = GridSpec(axis1, axis2, fixed)
    records = scans.scan(grid, threads=cfg.threads)
    _emit_records(cfg, records)
    return 0


def _cmd_boundary(cfg: RunConfig) -> int:
    o = cfg.options
    control = _parse_axis(o["control"])
    if control.name not in ("B", "delta"):
        raise DomainError(f"boundary control must be B or delta, got {control.name}")
    template = ClusterSpec(o["n"], o["j"], o["delta"], o["b"])
    result = scans.boundary(control.name, control.values(), template, o["t_max"])
    label = "b" if result.control_name == "B" else "delta"
    rows = [[_fmt(v), _fmt(t)] for v, t in result.points]
    json_rows = {"control": result.control_name, "points": [list(p) for p in result.points]}
    _write_rows(cfg, (label, "t_threshold"), rows, "boundary", json_rows)
    if cfg.out and not cfg.quiet:
        print(f"wrote {len(result.points)} boundary points to {cfg.out}")
    return 0


def _cmd_max_rescaled(cfg: RunConfig) -> int:
    o = cfg.options
    if (o.get("n") is None) == (o.get("n_list") is None):
        raise DomainError("give exactly one of --n or --n-list")
    n_values = [o["n"]] if o.get("n") is not None else _parse_n_list(o["n_list"])
    b_grid = _parse_range(o["b_grid"])
    t_grid = _parse_range(o["t_grid"])
    rows = []
    for n in n_values:
        if n < 2:
            raise DomainError(f"n must be >= 2, got {n}")
        rows.append((n, scans.max_rescaled(n, b_grid, t_grid)))
    if not cfg.quiet:
        for n, value in rows:
            print(f"n = {n}: max C_r = {_fmt(value)}")
    if cfg.out:
        _write_rows(
            cfg,
            ("n", "max_c_r"),
            [[n, _fmt(v)] for n, v in rows],
            "max_rescaled",
            [{"n": n, "value": v} for n, v in rows],
        )
    return 0


def _cmd_limit_curve(cfg: RunConfig) -> int:
    o = cfg.options
    deltas = _parse_range(o["delta_grid"])
    n_list = _parse_n_list(o["n_list"])
    rows = scans.limit_curve(deltas, n_list, t=o["t"], j=o["j"])
    _write_rows(
        cfg,
        ("delta", "n", "c_r"),
        [[_fmt(d), n, _fmt(cr)] for d, n, cr in rows],
        "curve",
        [[d, n, cr] for d, n, cr in rows],
    )
    if cfg.out and not cfg.quiet:
        print(f"wrote {len(rows)} curve points to {cfg.out}")
    return 0


def _cmd_oracle_check(cfg: RunConfig) -> int:
    o = cfg.options
    if o["n_max"] < 2 or o["n_max"] > oracle.ORACLE_N_MAX:
        raise DomainError(f"--n-max must lie in [2, {oracle.ORACLE_N_MAX}], got {o['n_max']}")
    if o["points"] < 1:
        raise DomainError(f"--points must be >= 1, got {o['points']}")
    report = oracle.comparison_report(o["n_max"], o["points"], o["seed"])
    if not cfg.quiet:
        print(f"oracle check: {len(report.rows)} random points, n <= {o['n_max']}, seed {o['seed']}")
        print(f"max |C_engine - C_oracle| = {report.max_abs_diff:.3e} (tol {report.concurrence_tol:.0e})")
        print(f"max spectrum deviation    = {report.max_spectrum_dev:.3e} (tol {report.spectrum_tol:.0e})")
        print("agreement within tolerance" if report.passed else "DISAGREEMENT beyond tolerance")
    if cfg.out:
        rows = [
            [n, _fmt(j), _fmt(d), _fmt(b), _fmt(t), _fmt(ce), _fmt(co), _fmt(abs(ce - co))]
            for n, j, d, b, t, ce, co in report.rows
        ]
        json_rows = {
            "rows": [list(r) for r in report.rows],
            "max_abs_diff": report.max_abs_diff,
            "max_spectrum_dev": report.max_spectrum_dev,
            "passed": report.passed,
        }
        _write_rows(
            cfg,
            ("n", "j", "delta", "b", "t", "c_engine", "c_oracle", "abs_diff"),
            rows,
            "report",
            json_rows,
        )
    return 0 if report.passed else 3


_COMMANDS = {
    "point": _cmd_point,
    "scan": _cmd_scan,
    "boundary": _cmd_boundary,
    "max-rescaled": _cmd_max_rescaled,
    "limit-curve": _cmd_limit_curve,
    "oracle-check": _cmd_oracle_check,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    try:
        argv = _apply_config_file(argv)
    except (OSError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        cfg = _cfg_from_args(args)
        return _COMMANDS[args.command](cfg)
    except (ConsistencyError, NumericalError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except (SpinClusterError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
