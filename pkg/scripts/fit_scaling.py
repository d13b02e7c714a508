#!/usr/bin/env python3
"""Summarise a benchmark stats file: per-method peak/time table, linear fit
of the linspace peaks, and the growth ratios the scaling claims rest on.

    python scripts/fit_scaling.py bench.jsonl
"""

import argparse
import sys
from collections import defaultdict

from linexp.cli import fit_linear, load_stats


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("stats", help="JSONL file written by the bench command")
    args = ap.parse_args()

    recs = load_stats(args.stats)
    by_method = defaultdict(dict)
    for r in recs:
        by_method[r["method"]].setdefault(r["n"], []).append(r)

    for method, runs in sorted(by_method.items()):
        print(f"\nmethod: {method}")
        print(f"{'n':>8} {'peak_bytes':>14} {'wall_s':>10} {'depth':>6}")
        for n in sorted(runs):
            rs = runs[n]
            peak = min(r["peak_bytes"] for r in rs)
            wall = min(r["wall_ns"] for r in rs) / 1e9
            depth = max(r["max_depth"] for r in rs)
            print(f"{n:>8} {peak:>14} {wall:>10.2f} {depth:>6}")
        ns = sorted(runs)
        if len(ns) >= 2:
            peaks = [float(min(r["peak_bytes"] for r in runs[n])) for n in ns]
            a, b, r2 = fit_linear([float(n) for n in ns], peaks)
            print(f"peak fit: {a:.2f} * n + {b:.0f}   (r^2 = {r2:.5f})")
            print(f"peak ratio {ns[-1]}/{ns[0]}: {peaks[-1] / peaks[0]:.2f}")
            for lo, hi in zip(ns, ns[1:]):
                wlo = min(r["wall_ns"] for r in runs[lo])
                whi = min(r["wall_ns"] for r in runs[hi])
                print(f"wall ratio {hi}/{lo}: {whi / wlo:.2f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
