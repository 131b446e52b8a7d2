"""The q^t-row array built from projective points, and what it covers."""
import itertools

from covarray import build_a_opt, coverage_report, cov_a_opt_exact, make_field, verify_oa
from covarray.constructions import projective_points

f2 = make_field(2)
a = build_a_opt(f2, 3)
print("A_opt(2,3) is", a.shape, "over", a.v, "symbols")
print(a.data)

# A t-set of columns is covered exactly when its projective points are independent.
rep = coverage_report(a, 3)
print(f"covered {rep.covered} of {rep.total} triples")
pts = projective_points(f2, 3)
for w in rep.uncovered_witnesses:
    print("  dependent triple:", [pts[i].indices for i in w.indices])

print("exact count from the rank formula:", cov_a_opt_exact(f2, 3))
print("strength-2 orthogonal array index:", verify_oa(a, 2).lam)

# Larger fields grow quickly but stay exact.
for q, t in itertools.product([3, 4, 5], [2, 3]):
    spec = make_field(q) if q != 4 else make_field(2, 2)
    print(f"q={q} t={t}: {cov_a_opt_exact(spec, t)} covered t-sets")
