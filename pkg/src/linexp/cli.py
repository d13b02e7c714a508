"""Command-line front end and benchmark harness.

Two subcommands:

  eval   evaluate one function at one point and print the value with exactly
         --bits fractional bits (bin / hex / dec rendering; complex results
         print as two whitespace-separated fields, real part first)
  bench  run exp of the full-precision point 1/3 across a list of accuracies
         and methods, writing one JSON stats line per run

Stats records carry the peak traced allocation around the evaluation call
(tracemalloc), the deepest split recursion observed, wall time and the
rendered result.  Instrumentation never changes computed values.

Exit codes: 0 success, 2 malformed input, 3 stats/bench I/O failure.
"""

from __future__ import annotations

import argparse
import gc
import json
import sys
import time
import tracemalloc
from dataclasses import asdict, dataclass

from . import instrument
from .bignum import ComplexDyadic, Dyadic
from .errors import MalformedOracle, ReductionContractError
from .expfuncs import (cos_c, cosh_c, dyadic_oracle, exp_complex,
                       exp_imaginary, exp_real, rational_oracle, sin_c,
                       sinh_c)

FUNCTIONS = ("exp", "expi", "sin", "cos", "sinh", "cosh")

_DEC_DIGITS_NUM, _DEC_DIGITS_DEN = 30103, 100000  # log10(2) truncated


# ---------------------------------------------------------------------------
# dyadic text grammar: plain integers, hex floats 0xHHp+-E, binary b.bbb


def parse_dyadic(text: str) -> Dyadic:
    s = text.strip()
    if not s:
        raise ValueError("empty dyadic literal")
    sign = 1
    if s[0] in "+-":
        sign = -1 if s[0] == "-" else 1
        s = s[1:]
    if s.lower().startswith("0x"):
        body = s[2:]
        mant_part, had_p, exp_part = body.lower().partition("p")
        if not mant_part or any(c not in "0123456789abcdef" for c in mant_part):
            raise ValueError(f"bad hex mantissa in {text!r}")
        if had_p and not exp_part:
            raise ValueError(f"missing exponent in {text!r}")
        mant = int(mant_part, 16)
        e = int(exp_part) if exp_part else 0
        if e >= 0:
            return Dyadic(sign * (mant << e), 0)
        return Dyadic(sign * mant, -e)
    if "." in s:
        ip, _, fp = s.partition(".")
        if not (ip or fp) or any(c not in "01" for c in ip + fp):
            raise ValueError(f"bad binary literal {text!r}")
        mant = int((ip + fp) or "0", 2)
        return Dyadic(sign * mant, len(fp))
    if not s.isdigit():
        raise ValueError(f"bad dyadic literal {text!r}")
    return Dyadic(sign * int(s), 0)


def _split_abs(x: Dyadic) -> tuple[str, int, int]:
    neg = x.mantissa < 0
    am = -x.mantissa if neg else x.mantissa
    return ("-" if neg else "", am >> x.scale, am & ((1 << x.scale) - 1))


def format_bin(x: Dyadic, frac_bits: int) -> str:
    t = x.truncate(frac_bits).align(frac_bits)
    sign, ip, fp = _split_abs(t)
    return f"{sign}{ip:b}.{fp:0{frac_bits}b}" if frac_bits else f"{sign}{ip:b}."


def format_hex(x: Dyadic, frac_bits: int) -> str:
    t = x.truncate(frac_bits).align(frac_bits)
    sign = "-" if t.mantissa < 0 else ""
    return f"{sign}0x{abs(t.mantissa):x}p-{t.scale}"


def format_dec(x: Dyadic, frac_bits: int) -> str:
    t = x.truncate(frac_bits)
    digits = max(1, frac_bits * _DEC_DIGITS_NUM // _DEC_DIGITS_DEN)
    sign, ip, fp = _split_abs(t)
    scaled = (fp * 10 ** digits) >> t.scale
    return f"{sign}{ip}.{scaled:0{digits}d}"


_FORMATTERS = {"bin": format_bin, "hex": format_hex, "dec": format_dec}


def render(value: Dyadic | ComplexDyadic, frac_bits: int, fmt: str) -> str:
    f = _FORMATTERS[fmt]
    if isinstance(value, ComplexDyadic):
        return f"{f(value.re, frac_bits)} {f(value.im, frac_bits)}"
    return f(value, frac_bits)


# ---------------------------------------------------------------------------
# instrumentation


@dataclass(frozen=True)
class RunStats:
    function: str
    n: int
    p: int
    method: str
    peak_bytes: int
    max_depth: int
    wall_ns: int
    result: str

    def to_json_line(self) -> str:
        return json.dumps(asdict(self), separators=(",", ":"))


def run_instrumented(compute):
    """Run compute() under the allocation hook; returns (value, peak, depth, ns)."""
    gc.collect()
    instrument.reset()
    was_tracing = tracemalloc.is_tracing()
    if not was_tracing:
        tracemalloc.start(1)
    base = tracemalloc.get_traced_memory()[0]
    tracemalloc.reset_peak()
    t0 = time.perf_counter_ns()
    value = compute()
    wall_ns = max(1, time.perf_counter_ns() - t0)
    peak = tracemalloc.get_traced_memory()[1]
    if not was_tracing:
        tracemalloc.stop()
    depth = instrument.snapshot().max_split_depth
    return value, max(1, peak - base), depth, wall_ns


# ---------------------------------------------------------------------------
# eval


def _evaluate(function: str, re: Dyadic, im: Dyadic | None, bits: int, p: int,
              method: str) -> Dyadic | ComplexDyadic:
    ox = dyadic_oracle(re)
    oy = dyadic_oracle(im) if im is not None else dyadic_oracle(Dyadic(0, 0))
    if function == "exp":
        if im is None:
            return exp_real(ox, bits, p, method)
        return exp_complex(ox, oy, bits, p, method)
    if function == "expi":
        return exp_imaginary(ox, bits, p, method)
    fn = {"sin": sin_c, "cos": cos_c, "sinh": sinh_c, "cosh": cosh_c}[function]
    return fn(ox, oy, bits, p, method)


def cmd_eval(args: argparse.Namespace) -> int:
    try:
        re = parse_dyadic(args.re)
        im = parse_dyadic(args.im) if args.im is not None else None
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.function == "expi" and im is not None:
        print("error: expi takes its (imaginary-axis) argument via --re", file=sys.stderr)
        return 2
    for label, v in (("--re", re), ("--im", im)):
        if v is not None and not v.abs_le_pow2(args.area_p):
            print(f"error: {label} outside |.| <= 2^{args.area_p}", file=sys.stderr)
            return 2

    def compute():
        return _evaluate(args.function, re, im, args.bits, args.area_p, args.method)

    try:
        if args.stats:
            value, peak, depth, wall = run_instrumented(compute)
        else:
            value = compute()
    except (MalformedOracle, ReductionContractError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out = render(value, args.bits, args.format)
    if args.stats:
        stats = RunStats(args.function, args.bits, args.area_p, args.method,
                         peak, depth, wall, out)
        try:
            with open(args.stats, "w") as fh:
                fh.write(stats.to_json_line() + "\n")
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 3
    print(out)
    return 0


# ---------------------------------------------------------------------------
# bench


def bench_runs(bits_list: list[int], methods: list[str], reps: int,
               progress=None):
    """Yield one RunStats per (bits, method, rep), exp of 1/3 at p = 0."""
    oracle = rational_oracle(1, 3)
    for bits in bits_list:
        for method in methods:
            for rep in range(reps):
                if progress:
                    progress(f"bench: exp n={bits} method={method} rep={rep + 1}/{reps}")
                value, peak, depth, wall = run_instrumented(
                    lambda: exp_real(oracle, bits, 0, method))
                yield RunStats("exp", bits, 0, method, peak, depth, wall,
                               format_hex(value, bits))


def cmd_bench(args: argparse.Namespace) -> int:
    try:
        bits_list = [int(t) for t in args.bits_list.split(",") if t]
        methods = [t.strip() for t in args.methods.split(",") if t.strip()]
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if not bits_list or not methods or args.reps < 1:
        print("error: empty bits list / methods / reps", file=sys.stderr)
        return 2
    for m in methods:
        if m not in ("linspace", "classic"):
            print(f"error: unknown method {m!r}", file=sys.stderr)
            return 2

    def progress(msg: str) -> None:
        print(msg, file=sys.stderr, flush=True)

    try:
        with open(args.out, "w") as fh:
            for stats in bench_runs(bits_list, methods, args.reps, progress):
                fh.write(stats.to_json_line() + "\n")
                fh.flush()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    return 0


# ---------------------------------------------------------------------------
# scaling analysis helpers (shared by scripts/ and the acceptance suite)


def fit_linear(xs: list[float], ys: list[float]) -> tuple[float, float, float]:
    """Least-squares y = a*x + b; returns (a, b, r_squared)."""
    npts = len(xs)
    mx = sum(xs) / npts
    my = sum(ys) / npts
    sxx = sum((x - mx) ** 2 for x in xs)
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    a = sxy / sxx
    b = my - a * mx
    ss_res = sum((y - (a * x + b)) ** 2 for x, y in zip(xs, ys))
    ss_tot = sum((y - my) ** 2 for y in ys)
    r2 = 1.0 if ss_tot == 0 else 1.0 - ss_res / ss_tot
    return a, b, r2


def load_stats(path: str) -> list[dict]:
    with open(path) as fh:
        return [json.loads(line) for line in fh if line.strip()]


# ---------------------------------------------------------------------------
# entry


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="linexp",
        description="exp/sin/cos/sinh/cosh to any requested absolute accuracy 2^-n")
    sub = parser.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("eval", help="evaluate one function at one point")
    pe.add_argument("--function", required=True, choices=FUNCTIONS)
    pe.add_argument("--re", required=True, help="argument (real part), dyadic literal")
    pe.add_argument("--im", default=None, help="imaginary part, dyadic literal")
    pe.add_argument("--bits", required=True, type=int, help="accuracy exponent n")
    pe.add_argument("--area-p", dest="area_p", type=int, default=0,
                    help="area exponent p, argument must satisfy |.| <= 2^p")
    pe.add_argument("--method", choices=("linspace", "classic"), default="linspace")
    pe.add_argument("--stats", default=None, help="write a one-line JSON stats record")
    pe.add_argument("--format", choices=("bin", "hex", "dec"), default="hex")
    pe.set_defaults(func=cmd_eval)

    pb = sub.add_parser("bench", help="timing/space matrix over accuracies and methods")
    pb.add_argument("--bits-list", dest="bits_list", required=True,
                    help="comma-separated accuracy exponents")
    pb.add_argument("--methods", default="linspace,classic")
    pb.add_argument("--reps", type=int, default=1)
    pb.add_argument("--out", required=True, help="stats file (JSON lines)")
    pb.set_defaults(func=cmd_bench)
    return parser


def _merge_value_flags(argv: list[str]) -> list[str]:
    # dyadic literals may start with '-'; fold "--re -0x1p0" into "--re=-0x1p0"
    # so the parser does not mistake the value for an option
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in ("--re", "--im") and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(2 ** 24)
    if argv is None:
        argv = sys.argv[1:]
    args = build_parser().parse_args(_merge_value_flags(list(argv)))
    return args.func(args)


def entry() -> None:
    raise SystemExit(main())
