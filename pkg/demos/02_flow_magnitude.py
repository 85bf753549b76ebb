"""
Max-plus magnitude of a parallel bundle
=======================================

A bundle has one entry edge, several branches of blocks in series, and one
exit edge.  Each matrix entry is the entropy of the region between two edges.
The principal weighting along a branch is minus the running maximum of
block entropies, and the coweighting is minus the maximum still ahead.
"""

import math

import numpy as np

from flowmag.fixtures import bundle
from flowmag.flow import principal_solutions, tropical_magnitude, tropical_similarity_matrix

branches = [["two-cycle", "complete3", "double-two-cycle"], ["plastic", "path"]]
b = bundle(branches)
F = b.flow
Z = tropical_similarity_matrix(F)
v_hat, w_hat = principal_solutions(Z)

print(f"{F.n} vertices, {len(F.edges)} edges, entry {F.label_edge(F.entry)}, exit {F.label_edge(F.exit)}")
print("Z[entry, exit] =", Z[b.entry, b.exit], "  log 2 =", math.log(2))

for k, (edges, hs) in enumerate(zip(b.backbone, b.entropies)):
    print(f"\nbranch {k}: block entropies {np.round(hs, 4).tolist()}")
    for j, e in enumerate(edges):
        i = Z.edges.index(e)
        print(f"  backbone edge {j} {F.label_edge(e)}:  w_hat={w_hat[i]: .4f}  v_hat={v_hat[i]: .4f}")

m = tropical_magnitude(Z)
print("\nmagnitude:", m.value, "(both sides:", m.lhs, m.rhs, ")")

# Treat acyclic regions as entropy 0 instead of log 0, for comparison.
Z0 = tropical_similarity_matrix(F, acyclic_entropy=0.0)
print("with unit convention:", tropical_magnitude(Z0).value)
