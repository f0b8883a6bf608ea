#!/usr/bin/env python3
"""Run the seeded regular-terrain suite and summarize the observed constants.

Example:
    python scripts/bench_regular.py --seeds 200 -o artifacts/bench.csv
"""
import argparse
import math
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from thunt.harness import advice_bits_budget, bench, reports_to_csv


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seeds", type=int, default=200)
    ap.add_argument("--start-seed", type=int, default=0)
    ap.add_argument("--obstacles", type=int, default=None)
    ap.add_argument("--c", type=float, default=2.0)
    ap.add_argument("--extent", type=float, default=10.0)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("-o", "--out", default=None)
    args = ap.parse_args()

    reports = bench(range(args.start_seed, args.start_seed + args.seeds),
                    n_obstacles=args.obstacles, c=args.c, extent=args.extent,
                    jobs=args.jobs)
    if args.out:
        os.makedirs(os.path.dirname(args.out) or ".", exist_ok=True)
        with open(args.out, "w") as fh:
            fh.write(reports_to_csv(reports))
        print(f"wrote {args.out}")

    failed = [r.seed for r in reports if not r.passed]
    ratios = [r.first_sight_length / max(r.L, 1.0) for r in reports]
    margins = [advice_bits_budget(r.L, r.lam) - r.advice_bits for r in reports]
    print(f"scenarios      : {len(reports)}")
    print(f"failed         : {len(failed)}{' ' + str(failed) if failed else ''}")
    print(f"lambda range   : [{min(r.lam for r in reports):.3f}, "
          f"{max(r.lam for r in reports):.3f}]")
    print(f"L range        : [{min(r.L for r in reports):.3f}, "
          f"{max(r.L for r in reports):.3f}]")
    print(f"advice bits    : max {max(r.advice_bits for r in reports)}, "
          f"min budget margin {min(margins)}")
    print(f"cost ratio     : mean {sum(ratios) / len(ratios):.3f}, "
          f"max {max(ratios):.3f}")
    cp = [st.walked / max(9 * st.dmin, st.dmin + 2)
          for r in reports for st in r.cowpath]
    if cp:
        print(f"cow-path util  : max {max(cp):.6f} of the doubling bound "
              f"({len(cp)} searches)")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
