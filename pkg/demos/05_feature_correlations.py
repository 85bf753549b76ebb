"""
Which vertex features survive edge deletion?
============================================

Two random halves of a graph share most vertices.  A good matching feature
takes similar values on a shared vertex in both halves.  This script runs a
smaller copy of the Erdos-Renyi experiment and prints the quartiles.
"""

from flowmag.features import ExperimentConfig, feature_table, run_experiment
from flowmag.fixtures import plastic

T = feature_table(plastic())
print("features of the plastic digraph")
for name in T.names:
    print(f"  {name:<18s}", [round(float(x), 4) for x in T[name]])

cfg = ExperimentConfig(source="er", n=60, N=30, p_remove=0.5, seed=7, threads=4)
report = run_experiment(cfg)
print(f"\n{cfg.N} trials, {len(report.degenerate_trials)} degenerate")
print(f"{'feature':<18s} {'q1':>7s} {'median':>7s} {'q3':>7s}")
order = sorted(report.features, key=lambda f: -report.summary[f].get("median", -2))
for name in order:
    s = report.summary[name]
    if s["count"]:
        print(f"{name:<18s} {s['q1']:7.3f} {s['median']:7.3f} {s['q3']:7.3f}")
