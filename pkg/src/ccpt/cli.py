"""Command-line front end.

Subcommands: transform (coefficients to JSON), periods (strength report via
the matrix or dictionary method), filter-band (band-limited reconstruction),
benchmark (complexity table plus measured fast-transform counters), and
fixture (write the bundled reference signals).

Input signals are single-column CSV files of decimal samples with an
optional "value" header. Exit codes: 0 ok, 1 invalid arguments, 2 input
parse error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import period as periodmod
from . import signals as sig
from . import transform as tr
from .foccpt import complexity_table, foccpt, predicted_counts
from .matrices import CCPT1, CCPT2, DFT_NPM, FAMILIES, OCCPT, RPT
from .numtheory import divisors, half_residues

__all__ = ["main"]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_NUMERIC = 3


class CsvParseError(Exception):
    def __init__(self, path, line_no, text):
        super().__init__(f"{path}:{line_no}: cannot parse sample value {text!r}")
        self.line_no = line_no


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; this CLI reserves 2 for parse errors
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def read_signal_csv(path) -> np.ndarray:
    values = []
    with open(path, "r") as fh:
        for line_no, raw in enumerate(fh, start=1):
            text = raw.strip()
            if not text:
                continue
            if line_no == 1 and text.lower() == "value":
                continue
            try:
                values.append(float(text))
            except ValueError:
                raise CsvParseError(path, line_no, text) from None
    if not values:
        raise CsvParseError(path, 1, "<empty file>")
    return np.array(values)


def write_signal_csv(path, samples) -> None:
    with open(path, "w") as fh:
        fh.write("value\n")
        for v in np.asarray(samples):
            fh.write(format(float(v), ".12g") + "\n")


def _dump_json(obj, path) -> None:
    text = json.dumps(obj, sort_keys=True, indent=2)
    if path is None:
        print(text)
    else:
        with open(path, "w") as fh:
            fh.write(text + "\n")


def _write_strength_csv(rows, path) -> None:
    with open(path, "w") as fh:
        fh.write("period,strength\n")
        for p, s in rows:
            fh.write(f"{p},{format(float(s), '.12g')}\n")


def _is_pow2(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def cmd_transform(args) -> int:
    x = read_signal_csv(args.input)
    if args.family == OCCPT and len(x) >= 2 and _is_pow2(len(x)):
        coeffs, _ = foccpt(x)
    else:
        coeffs = tr.analyze(x, args.family)
    _dump_json(tr.coefficients_to_dict(coeffs), args.out)
    return EXIT_OK


def cmd_periods(args) -> int:
    x = read_signal_csv(args.input)
    if args.method == "matrix":
        coeffs = tr.analyze(x, args.family)
        report = periodmod.period_strengths(coeffs, threshold=args.threshold)
        payload = report.to_dict()
        rows = report.strength_rows()
    else:
        d = periodmod.build_dictionary(len(x), args.pmax, family=args.family,
                                       penalty=args.penalty)
        solution = periodmod.dictionary_solve(x, d)
        payload = solution.to_dict()
        rows = solution.strength_rows()
    payload["method"] = args.method
    _dump_json(payload, args.out)
    if args.strengths_csv:
        _write_strength_csv(rows, args.strengths_csv)
    return EXIT_OK


def _parse_band(text):
    try:
        lo, hi = text.split(":")
        return float(lo), float(hi)
    except ValueError:
        raise ValueError(f"band must be LO:HI, got {text!r}") from None


def band_filter(coeffs: tr.CoefficientSet, fs: float, low_hz: float, high_hz: float) -> tr.CoefficientSet:
    """Zero every component whose frequency k*fs/p lies outside [low, high]
    and return the filtered coefficient set. DC survives only when the band
    includes 0."""
    if not 0.0 <= low_hz <= high_hz:
        raise ValueError(f"invalid band [{low_hz}, {high_hz}]")
    if high_hz > fs / 2 + 1e-12:
        raise ValueError(f"band edge {high_hz} Hz exceeds the Nyquist rate {fs / 2} Hz")
    flat = np.array(coeffs.flat)
    N = coeffs.N
    if coeffs.family == OCCPT:
        for p in divisors(N):
            for k in half_residues(p):
                f = (0.0 if p == 1 else k / p) * fs
                if low_hz <= f <= high_hz:
                    continue
                flat[(N * k // p) % N] = 0.0
                if p >= 3:
                    flat[N - N * k // p] = 0.0
    else:
        for i, (col, _) in enumerate(coeffs.items()):
            ratio = 0.0 if col.p == 1 else min(col.k, col.p - col.k) / col.p
            if col.kind == "ram":
                # Ramanujan columns mix every coprime frequency of p; keep the
                # subspace when any of its lines falls in the band
                ratios = [k / col.p for k in half_residues(col.p)] if col.p > 1 else [0.0]
                keep = any(low_hz <= r * fs <= high_hz for r in ratios)
            else:
                keep = low_hz <= ratio * fs <= high_hz
            if not keep:
                flat[i] = 0.0
    return tr.CoefficientSet(N=N, family=coeffs.family, flat=flat)


def cmd_filter_band(args) -> int:
    if args.fs is None:
        raise ValueError("filter-band requires --fs")
    lo, hi = _parse_band(args.band)
    x = read_signal_csv(args.input)
    coeffs = tr.analyze(x, args.family)
    filtered = band_filter(coeffs, args.fs, lo, hi)
    y = tr.synthesize(filtered)
    write_signal_csv(args.out or "filtered.csv", np.real(y))
    return EXIT_OK


def cmd_benchmark(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",") if s]
    if not sizes or any(n < 1 for n in sizes):
        raise ValueError(f"invalid size list {args.sizes!r}")
    rng = np.random.default_rng(args.seed)
    report = []
    for n in sizes:
        entry = {"N": n, "table": complexity_table(n)}
        if n >= 2 and _is_pow2(n):
            _, ctr = foccpt(rng.standard_normal(n))
            predicted = predicted_counts(n, "real")
            entry["family"] = OCCPT
            entry["measured"] = ctr.as_dict()
            entry["predicted"] = predicted.as_dict()
            entry["measured_equals_predicted"] = ctr == predicted
        report.append(entry)
    _dump_json({"benchmark": report}, args.out)
    return EXIT_OK


def cmd_fixture(args) -> int:
    if args.name == "x1":
        s = sig.make_x1() if args.seed is None else sig.make_x1(noise_seed=args.seed)
    elif args.name == "x2":
        s = sig.make_x2() if args.seed is None else sig.make_x2(noise_seed=args.seed)
    else:
        s = sig.synthetic_ecg() if args.seed is None else sig.synthetic_ecg(seed=args.seed)
    write_signal_csv(args.out or f"{args.name}.csv", s.samples)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ccpt", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_family=True):
        p.add_argument("--out", default=None, help="output path (default: stdout for JSON)")
        if with_family:
            p.add_argument("--family", choices=list(FAMILIES), default=OCCPT)

    p = sub.add_parser("transform", help="write transform coefficients as JSON")
    p.add_argument("--input", required=True)
    add_common(p)
    p.set_defaults(fn=cmd_transform)

    p = sub.add_parser("periods", help="period strength report")
    p.add_argument("--input", required=True)
    p.add_argument("--method", choices=["matrix", "dictionary"], default="matrix")
    p.add_argument("--threshold", type=float, default=0.2)
    p.add_argument("--pmax", type=int, default=50)
    p.add_argument("--penalty", choices=["p2", "phi"], default="p2")
    p.add_argument("--strengths-csv", default=None, help="also write period,strength rows")
    add_common(p)
    p.set_defaults(fn=cmd_periods)

    p = sub.add_parser("filter-band", help="band-limited reconstruction")
    p.add_argument("--input", required=True)
    p.add_argument("--fs", type=float, default=None)
    p.add_argument("--band", required=True, help="LO:HI in Hz")
    add_common(p)
    p.set_defaults(fn=cmd_filter_band)

    p = sub.add_parser("benchmark", help="complexity table and measured counters")
    p.add_argument("--sizes", required=True, help="comma-separated signal lengths")
    p.add_argument("--seed", type=int, default=0)
    add_common(p, with_family=False)
    p.set_defaults(fn=cmd_benchmark)

    p = sub.add_parser("fixture", help="write a bundled reference signal")
    p.add_argument("--name", choices=["x1", "x2", "ecg"], required=True)
    p.add_argument("--seed", type=int, default=None)
    add_common(p, with_family=False)
    p.set_defaults(fn=cmd_fixture)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except CsvParseError as exc:
        print(f"ccpt: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except FileNotFoundError as exc:
        print(f"ccpt: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ValueError, KeyError) as exc:
        print(f"ccpt: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except np.linalg.LinAlgError as exc:
        print(f"ccpt: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
