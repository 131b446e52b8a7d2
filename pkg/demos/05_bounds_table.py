"""Upper bounds on covering array size, old and new."""
from covarray import can_upper_gss, can_upper_new, d_bound_table

print(" t  v   d_gss    d_new")
for t in (3, 4, 5):
    for v in (4, 5, 7, 8, 9):
        tb = d_bound_table(t, v)
        print(f"{t:2d} {v:2d} {tb.d_gss:8.1f} {tb.d_new:8.1f}")

# Concrete row counts for a fixed instance as k grows.
for k in (10, 100, 1000, 10**6):
    print(f"k={k:>7}: new {can_upper_new(3, k, 4):6d}, leading term of the older bound "
          f"{can_upper_gss(3, k, 4):9.1f}")
