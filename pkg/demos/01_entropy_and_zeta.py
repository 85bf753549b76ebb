"""
Topological entropy and zeta functions of flow graphs
======================================================

Entropy counts how fast walks multiply.  Gluing flow graphs in series
keeps the largest entropy and multiplies the zeta functions.
"""

import math

from flowmag.fixtures import BLOCKS, plastic
from flowmag.flow import series_compose
from flowmag.graph import count_walks
from flowmag.spectral import char_poly, poly_mul, spectral_radius, topological_entropy, zeta_denominator

# The three-vertex digraph whose characteristic polynomial is x^3 - x - 1.
D = plastic()
print("edges:", sorted(D.label_edges()))
print("char poly (ascending):", char_poly(D))
print("rho =", spectral_radius(D), " h =", topological_entropy(D))

# Walk counts grow like rho**N, so log W / N creeps toward h.
for N in (5, 10, 20, 40, 80):
    W = count_walks(D, N)
    print(f"N={N:3d}  W={W:<14d}  log(W)/N={math.log(W) / N:.5f}")

# Series composition of two library blocks.
F1 = BLOCKS["double-two-cycle"][0]()
F2 = BLOCKS["plastic"][0]()
G = series_compose([F1, F2])
print()
print("h(F1), h(F2), h(F1 x F2):",
      topological_entropy(F1.graph), topological_entropy(F2.graph), topological_entropy(G.graph))

# det(I - tA) of the composite is the product of the factors' (as data, not a plot).
z1, z2, z = zeta_denominator(F1.graph), zeta_denominator(F2.graph), zeta_denominator(G.graph)
print("1/zeta(F1)     :", z1)
print("1/zeta(F2)     :", z2)
print("1/zeta(F1 x F2):", z)
print("product matches:", z == poly_mul(z1, z2))
