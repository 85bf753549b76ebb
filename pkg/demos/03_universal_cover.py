"""
Balls in the universal cover
============================

Unfold every walk from a basepoint into a tree.  The ball sizes are row sums
of powers of A, and since the ball is a polytree its magnitude is
|V| - (|V| - 1) exp(-t).  At large t, log-magnitude / L approaches the entropy.
"""

from flowmag.cover import ball_sizes, build_ball, volume_entropy_sequence
from flowmag.fixtures import plastic
from flowmag.report import render_csv
from flowmag.spectral import topological_entropy

D = plastic()
B = build_ball(D, 0, 3)
for node, parent in zip(B.nodes, B.parents):
    path = "-".join(D.labels[v] for v in node)
    print(f"{path:<10s} parent={'-'.join(D.labels[v] for v in B.nodes[parent]) if parent >= 0 else ''}")
print("counts per depth:", B.counts, " cumulative:", B.cumulative_counts)
print("sizes up to L=10 from each basepoint:")
for v0 in range(D.n):
    print(" ", D.labels[v0], ball_sizes(D, v0, 10))

h = topological_entropy(D)
print(f"\nh = {h:.5f}")
rows = []
for L in (1, 2, 5, 10, 20, 50, 100, 200):
    row = [L]
    for t in (0.0, 1.0, 100.0):
        row.append(volume_entropy_sequence(D, 0, t, L)[-1])
    rows.append(row)
# plot-ready: one column per scale
print(render_csv(["L", "s_L(t=0)", "s_L(t=1)", "s_L(t=100)"], rows))
