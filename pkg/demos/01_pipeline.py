# %% [markdown]
# From a citation matrix to clusters: clean, describe, cluster, compare.
# Uses a planted benchmark so the right answer is known.

# %%
from jcmap import (
    ClusterConfig,
    PlantedSpec,
    association,
    clean,
    cluster,
    largest_component,
    network_stats,
    planted_partition,
    symmetrize,
)

g, truth = planted_partition(PlantedSpec(n_nodes=300, n_blocks=5, p_in=0.2, p_out=0.01, seed=42))
print(g.n, "journals,", len(g.arcs), "citation arcs")

# %%
# self-citations would dominate the diagonal; drop them, keep every weight
g, report = clean(g, min_weight=1)
print(report)
print(network_stats(g).report())

# %%
# the 5-citation threshold thins the map considerably
thin, r5 = clean(g, min_weight=5)
print("arcs removed at threshold 5:", r5.arcs_removed_by_threshold)
print("density", round(network_stats(g).density, 4), "->", round(network_stats(thin).density, 4))

# %%
sym, members = largest_component(symmetrize(g))
print("largest component:", sym.n, "of", g.n)

louvain, q = cluster(sym, ClusterConfig("louvain", seed=1))
vos, v = cluster(sym, ClusterConfig("vos", seed=1))
print("louvain", louvain.n_clusters, "clusters, Q =", round(q.value, 4))
print("vos    ", vos.n_clusters, "clusters, quality =", round(v.value, 4))

# %%
# how far do the two methods agree, and how close is each to the planted blocks
print(association(louvain, vos).table())
print("louvain vs truth V =", association(louvain, truth).cramers_v)
print("vos vs truth V =", association(vos, truth).cramers_v)
