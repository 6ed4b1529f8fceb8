# %% [markdown]
# Decompose a large cluster into its specialties, name a branch, and check it
# against an external subject list.

# %%
from pathlib import Path

from jcmap import (
    DecomposeConfig,
    PlantedSpec,
    compare_external,
    decompose,
    planted_partition,
    relabel,
    tree_to_partition,
)
from jcmap.vosio import export_submatrix_csv, write_clu

out = Path(__file__).with_name("out")
out.mkdir(exist_ok=True)

g, _ = planted_partition(PlantedSpec(400, 4, 0.12, 0.004, seed=5))
tree = decompose(g, DecomposeConfig(method="vos", root_seed=2014, min_size=15, max_depth=3))
print(tree.outline())

# %%
# every branch has its own derived seed, so a subtree can be rerun alone
for node in tree.walk():
    if node.path.count(".") == 0 and node.path:
        print(node.path, node.size, "journals, seed", node.seed, "stop:", node.stop_reason)

# %%
tree = relabel(tree, "1", "Field One")
external = [tree.labels[x] for x in tree.find("1").members[:30]] + ["J999 Journal Not In Data"]
rep = compare_external(tree, "1", external)
print(rep.table())

# %%
# partitions per level for Pajek, and the branch's citation matrix for factor analysis
for depth in (1, 2):
    (out / f"level-{depth}.clu").write_text(write_clu(tree_to_partition(tree, depth)))
(out / "field-one.csv").write_text(export_submatrix_csv(g, tree.find("1").members))
(out / "tree.json").write_text(tree.to_json())
print("written:", sorted(p.name for p in out.iterdir()))
