"""Stretching an array to more columns by repeating its columns."""
import math

import numpy as np

from covarray import blow_up, build_a_opt, build_block, coverage_report, make_field

base = build_a_opt(make_field(2), 2)
for k in (6, 9, 12):
    a, plan = blow_up(base, k)
    cov = coverage_report(a, 2).covered
    print(f"balanced k={k:2d}: covered {cov} pairs, part sizes {plan.part_sizes()}")

# Random assignments do a little worse on average than balanced ones.
ratios = [coverage_report(blow_up(base, 30, "random", seed=s)[0], 2).covered / math.comb(30, 2)
          for s in range(200)]
print(f"random k=30: mean ratio {np.mean(ratios):.4f}, spread {np.std(ratios):.4f}")

# The two-symbol block array is the natural baseline with the same row count.
print("block array, k=30:", coverage_report(build_block(2, 2, 30), 2).covered / math.comb(30, 2))
