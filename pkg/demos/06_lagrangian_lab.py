"""The auxiliary hypergraph on column vectors, and its Lagrangian."""
import numpy as np

from covarray import (
    build_h,
    c_tv,
    maxima_bruteforce,
    maxima_closed_form,
    optimize_lagrangian,
    support_oa_check,
)

h = build_h(2, 2)
print(f"H(2,2): {h.n_vertices} vertices, {h.n_edges} edges")
x, val = optimize_lagrangian(h, restarts=100)
print("best value", val, "vs", float(c_tv(2, 2) / 2))
support = np.flatnonzero(x > 1e-8)
print("optimal support:", [tuple(h.vertices[i].tolist()) for i in support])
print("support forms an orthogonal array:", support_oa_check(h, x))

# The optimum is not unique. Edges join every pair of balanced vectors except
# complementary ones, so only the weight on each complementary pair matters.
# Moving each pair's weight onto one vector gives an optimum of minimal support.
merged = np.zeros_like(x)
for i in range(16):
    merged[min(i, 15 - i)] += x[i]
print("after merging complements:", [tuple(h.vertices[i].tolist()) for i in np.flatnonzero(merged > 1e-8)])
print("value", float(np.prod(merged[h.edges], axis=1).sum()),
      "orthogonal array:", support_oa_check(h, merged))

h3 = build_h(3, 2)
print(f"H(3,2): {h3.n_vertices} vertices, {h3.n_edges} edges, degrees {set(h3.degrees().tolist()) - {0}}")
_, val = optimize_lagrangian(h3, restarts=20, iters=300)
print("best value", val, "vs", float(c_tv(3, 2) / 6))

for K in (3, 5, 8):
    print(f"K={K}: numeric {maxima_bruteforce(K, 3):.8f}, closed form {maxima_closed_form(K, 3):.8f}")
