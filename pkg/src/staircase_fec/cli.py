"""Command-line entry point: ``staircase-fec {run,sweep-delta,sweep-snr,selftest}``.

A config file holds ``key = value`` lines using the SimConfig field names
(``#`` starts a comment); command-line flags override it.
"""

from __future__ import annotations

import argparse
import dataclasses
import logging
import sys

import numpy as np

from .sim import ConfigError, InvariantViolation, SimConfig, run, sweep_delta, sweep_snr, write_csv

_TUPLE_FIELDS = {"modes": str, "snr_db": float, "delta": float}


def parse_grid(text: str) -> tuple[float, ...]:
    """``"7,7.1"`` or ``"6.9:7.1:0.05"`` (inclusive range)."""
    out: list[float] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ":" in part:
            a, b, step = (float(x) for x in part.split(":"))
            if step <= 0:
                raise ValueError(f"range step must be positive: {part!r}")
            out.extend(round(v, 10) for v in np.arange(a, b + step / 2, step))
        else:
            out.append(float(part))
    return tuple(out)


def _convert(name: str, raw: str):
    ftype = {f.name: f.type for f in dataclasses.fields(SimConfig)}[name]
    if name in _TUPLE_FIELDS:
        if _TUPLE_FIELDS[name] is str:
            return tuple(p.strip() for p in raw.split(",") if p.strip())
        return parse_grid(raw)
    if ftype == "bool":
        return raw.strip().lower() in ("1", "true", "yes", "on")
    if ftype == "int | None":
        return None if raw.strip().lower() in ("", "none") else int(raw)
    if ftype == "int":
        return int(float(raw))
    if ftype == "float":
        return float(raw)
    return raw.strip()


def read_config_file(path: str) -> dict:
    known = {f.name for f in dataclasses.fields(SimConfig)}
    values = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(path, f"line {lineno}: expected key = value")
            key, raw = (s.strip() for s in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in known:
                raise ConfigError(key, f"unknown key in {path}:{lineno}")
            values[key] = _convert(key, raw)
    return values


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value config file")
    common.add_argument("--code", help="named code (bch256, bch228, bch504, bch128, bch512, toy32) or m,k,t,shorten[,ext]")
    common.add_argument("--scheme", choices=("scc", "pc"))
    common.add_argument("--modulation", type=int, choices=(2, 4, 8), help="PAM order M")
    common.add_argument("--modes", help="comma list: standard,sabm,genie_mcfree,genie_sabm_bound")
    common.add_argument("--snr-db", dest="snr_db", help="grid, e.g. 7,7.1 or 6.9:7.1:0.05")
    common.add_argument("--delta", help="reliability threshold grid")
    common.add_argument("--L", dest="L", type=int, help="window size in blocks")
    common.add_argument("--iterations", type=int)
    common.add_argument("--min-errors", dest="min_errors", type=int)
    common.add_argument("--max-bits", dest="max_bits", type=float)
    common.add_argument("--blocks-per-stream", dest="blocks_per_stream", type=int)
    common.add_argument("--streams-per-round", dest="streams_per_round", type=int)
    common.add_argument("--max-streams", dest="max_streams", type=int)
    common.add_argument("--seed", type=int)
    common.add_argument("--workers", type=int)
    common.add_argument("--llr-scale", dest="llr_scale", type=float)
    common.add_argument("--hub-count", dest="hub_count", type=int)
    common.add_argument("--check-invariants", dest="check_invariants", action="store_true", default=None)
    common.add_argument("--early-exit", dest="early_exit", action="store_true", default=None)
    common.add_argument("-o", "--output", help="CSV path (default stdout)")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="staircase-fec", description="Monte-Carlo BER simulation of staircase and product codes.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("run", parents=[common], help="simulate the configured grid")
    sd = sub.add_parser("sweep-delta", parents=[common], help="SABM over a delta grid")
    sd.add_argument("grid", help="delta values, e.g. 4:16:2")
    ss = sub.add_parser("sweep-snr", parents=[common], help="all modes over an SNR grid")
    ss.add_argument("grid", help="SNR values in dB")
    st = sub.add_parser("selftest", help="oracle checks on small codes")
    st.add_argument("--seed", type=int, default=0)
    return p


def config_from_args(args: argparse.Namespace) -> SimConfig:
    values = read_config_file(args.config) if args.config else {}
    for f in dataclasses.fields(SimConfig):
        raw = getattr(args, f.name, None)
        if raw is None:
            continue
        if f.name == "max_bits":
            values[f.name] = int(raw)
        elif f.name in _TUPLE_FIELDS:
            values[f.name] = _convert(f.name, raw)
        else:
            values[f.name] = raw
    return SimConfig(**values)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "selftest":
        from .selftest import run_selftest

        return 0 if run_selftest(args.seed) else 1
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        cfg = config_from_args(args)
        if args.command == "run":
            rows = run(cfg)
        elif args.command == "sweep-delta":
            rows = sweep_delta(cfg, parse_grid(args.grid))
        else:
            rows = sweep_snr(cfg, parse_grid(args.grid))
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 3
    if args.output:
        try:
            with open(args.output, "w", newline="") as fh:
                write_csv(rows, fh)
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
    else:
        write_csv(rows, sys.stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
