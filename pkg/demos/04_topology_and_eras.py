"""
Scale-free and small-world diagnostics, and the shift across eras
=================================================================
"""

from isnad_sna import (
    avg_path_length,
    build_graph,
    degree_distribution,
    era_city_table,
    fit_power_law,
    global_clustering,
    per_era_counts,
)
from isnad_sna.topology import node_degrees
from synthetic import synthetic_corpus

table, records = synthetic_corpus()
graph = build_graph(records, table)

# %%
# Raw histogram buckets, ready for a log-log plot elsewhere.
hist = degree_distribution(graph, "total")
for k, count, logk, logc in hist.rows(loglog=True)[:10]:
    print(f"k={k:3d} n={count:4d}  log10 k={logk:.3f} log10 n={logc:.3f}")

# %%
# The exact discrete MLE and the closed-form approximation disagree most
# at small xmin, where the approximation is biased low.
degrees = node_degrees(graph, "total")
for xmin in (1, 3, 6):
    mle = fit_power_law(degrees, xmin)
    approx = fit_power_law(degrees, xmin, method="approx")
    print(f"xmin={xmin}: mle alpha={mle.alpha:.3f}  approx alpha={approx.alpha:.3f}  n={mle.n_tail}")

# %%
print("clustering:", round(global_clustering(graph), 4))
print("average path length:", round(avg_path_length(graph), 4))

# %%
# Narrators by city and era; small cities fold into "other".
print(per_era_counts(table.restricted_to(graph.nodes)))
eras = era_city_table(table.restricted_to(graph.nodes), min_row_total=5)
print(f"{'city':<10}" + "".join(f"{'era ' + str(e):>8}" for e in (1, 2, 3, 4)))
for city, row in eras.rows.items():
    print(f"{city:<10}" + "".join(f"{row[e]:>8}" for e in (1, 2, 3, 4)))
