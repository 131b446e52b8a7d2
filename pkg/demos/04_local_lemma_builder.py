"""Stacking random blow-ups until every t-set is covered."""
from fractions import Fraction

from covarray import (
    BuilderConfig,
    build_almost,
    build_covering,
    build_covering_any_v,
    field_of_order,
    make_plan,
)

plan = make_plan(2, 10, 2)
print("plan for t=2, k=10, v=2:", plan.to_json())

for strategy in ("restart", "resample"):
    out = build_covering(3, 30, field_of_order(2), BuilderConfig(seed=1, strategy=strategy))
    print(f"{strategy:8s}: {out.array.n_rows} rows, attempts={out.attempts}, "
          f"resamples={out.resamples}, verified={out.verified}")

# Six symbols are not a field order, so the build runs over GF(7) and merges a symbol.
out = build_covering_any_v(2, 8, 6, BuilderConfig(seed=0))
print("v=6 via q=7:", out.array.shape, "verified:", out.verified)

# Tolerating a fraction of uncovered pairs needs far fewer rows.
for eps in (Fraction(3, 4), Fraction(1, 2), Fraction(1, 10)):
    out = build_almost(2, 50, field_of_order(2), eps, BuilderConfig(seed=0))
    print(f"eps={eps}: {out.array.n_rows} rows leave {out.uncovered} of 1225 pairs uncovered")
