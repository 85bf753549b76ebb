"""
Magnitude of a digraph as a metric space
========================================
"""

import math

import numpy as np

from flowmag.fixtures import cycle, make_rng, plastic, random_polytree, single_edge
from flowmag.cover import polyforest_magnitude
from flowmag.metric import magnitude_function

ts = [0.1, 1.0, 10.0]

# a single edge gives 2 - exp(-t)
for m in magnitude_function(single_edge(), ts):
    print(f"edge     t={m.t:<5} Mag={m.magnitude:.12f}  closed form={2 - math.exp(-m.t):.12f}")

# a symmetric 2-cycle gives 2 / (1 + exp(-t))
for m in magnitude_function(cycle(2), ts):
    print(f"2-cycle  t={m.t:<5} Mag={m.magnitude:.12f}  closed form={2 / (1 + math.exp(-m.t)):.12f}")

# any polytree gives |V| - |E| exp(-t), whatever its orientation
T = random_polytree(make_rng(3), 9)
for m in magnitude_function(T, ts):
    print(f"polytree t={m.t:<5} Mag={m.magnitude:.12f}  closed form={polyforest_magnitude(T, m.t):.12f}")

# at t = 0 a strong digraph has an all-ones Z, so the solver falls back
value, w, v = magnitude_function(plastic(), [0.0], weights=True)[0]
print("\nplastic at t=0:", value.method, "weighting", np.round(w.w, 6), "magnitude", round(value.magnitude, 6))
