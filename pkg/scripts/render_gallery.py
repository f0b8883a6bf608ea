#!/usr/bin/env python3
"""Render example SVGs of the three terrain families with trajectories.

Example:
    python scripts/render_gallery.py -o artifacts/gallery
"""
import argparse
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from thunt import Scenario, make_advice, render_svg, thunt
from thunt.generators import (CombParams, comb_terrain, random_regular_terrain,
                              regular_lb_terrain)
from thunt.oracle import accessibility, select_tile


def render_to(path, scenario, with_tiling=True):
    spec = accessibility(scenario.terrain, scenario.treasure)
    advice = make_advice(scenario.terrain, scenario.start, scenario.treasure)
    outcome = thunt(scenario.terrain, scenario.start, advice,
                    treasure=scenario.treasure, strict=scenario.strict)
    side = None
    if with_tiling:
        a1, _, _ = select_tile(scenario.terrain, scenario.start, spec)
        side = 1.0 / a1
    doc = render_svg(scenario, outcome.trajectory, q_prime=outcome.q_prime,
                     lam=spec.lam, tiling_side=side)
    with open(path, "w") as fh:
        fh.write(doc)
    print(f"wrote {path}  (advice {len(advice)} bits, "
          f"walked {outcome.total_length:.2f})")


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-o", "--outdir", default="artifacts/gallery")
    args = ap.parse_args()
    os.makedirs(args.outdir, exist_ok=True)

    terrain, p, q = random_regular_terrain(8, 6)
    render_to(os.path.join(args.outdir, "random_regular.svg"),
              Scenario(terrain, p, q))

    terrain, p, q = comb_terrain(CombParams(12, 7, 0.25))
    render_to(os.path.join(args.outdir, "comb.svg"),
              Scenario(terrain, p, q, strict=False), with_tiling=False)

    terrain, p, centers = regular_lb_terrain(2, 0.5)
    render_to(os.path.join(args.outdir, "gadget_grid.svg"),
              Scenario(terrain, p, centers[1]), with_tiling=False)
    return 0


if __name__ == "__main__":
    sys.exit(main())
