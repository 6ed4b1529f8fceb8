# %% [markdown]
# Map coordinates for VOSviewer: the association-strength layout and the
# Kamada-Kawai alternative, written as paired map/network text files.

# %%
from pathlib import Path

import numpy as np
from scipy.spatial.distance import pdist, squareform

from jcmap import ClusterConfig, PlantedSpec, cluster, kamada_kawai, largest_component, planted_partition, symmetrize, vos_layout
from jcmap.vosio import write_vos_map, write_vos_network

out = Path(__file__).with_name("out")
out.mkdir(exist_ok=True)

g, truth = planted_partition(PlantedSpec(90, 3, 0.25, 0.01, seed=3))
sym, members = largest_component(symmetrize(g))
p, _ = cluster(sym, ClusterConfig("vos", seed=0))

# %%
vos = vos_layout(sym, seed=0)
kk = kamada_kawai(sym, seed=0)
print("vos objective", round(vos.objective, 3), "after", vos.iterations, "steps")
print("kk stress", round(kk.objective, 3), "after", kk.iterations, "sweeps")

# %%
# clusters should sit apart on the map
for name, lay in (("vos", vos), ("kk", kk)):
    d = squareform(pdist(lay.coords))
    same = np.equal.outer(p.assignment, p.assignment)
    np.fill_diagonal(same, False)
    print(name, "intra/inter distance", round(d[same].mean() / d[~np.equal.outer(p.assignment, p.assignment)].mean(), 3))

# %%
(out / "map.txt").write_text(write_vos_map(sym, p, vos))
(out / "map-kk.txt").write_text(write_vos_map(sym, p, kk))
(out / "network.txt").write_text(write_vos_network(sym))
print((out / "map.txt").read_text().splitlines()[:4])
