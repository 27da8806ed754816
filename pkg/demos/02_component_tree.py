# %% [markdown]
# # Inside the component tree
#
# Leaves hold connected components, every node holds a weighted
# nearest-neighbor structure over the sites below it, and empty leaves wait
# in a FIFO queue. This walks through the bridging case where a new disk
# joins a 3-disk component and a 2-disk component.

# %%
from diskconn import ComponentTree, Site


def show(tree):
    print(f"height={tree.height} queue={list(tree.empty_queue)}")
    for leaf in range(tree.leaf_count):
        node = tree.leaf_node(leaf)
        print(f"  leaf {leaf} (node {node}): sites {list(tree.component(leaf))}")
    sizes = [len(tree.awnn(n)) for n in range(tree.node_count)]
    print(f"  AWNN sizes by node: {sizes}")


tree = ComponentTree()
for i, x in enumerate([0, 2, 4]):
    tree.insert_site(Site.at(i, x, 0, 1))
for i, x in enumerate([20, 22], start=3):
    tree.insert_site(Site.at(i, x, 0, 1))
show(tree)

# %% [markdown]
# The second isolated component made the tree double once. Now bridge
# the two groups: the larger component keeps its leaf, the smaller one is
# moved and its leaf goes back on the queue.

# %%
bridge = Site.at(5, 12, 0, 7.5)
print("components hit:", tree.find_intersected_components(bridge))
report = tree.insert_site(bridge)
print(report)
show(tree)

# %% [markdown]
# The audit rechecks every invariant from scratch: placement, connectivity
# inside each leaf, no edges between leaves, AWNN contents and the queue.

# %%
print("violations:", tree.audit())

# Corrupt the root on purpose to see a violation.
tree.awnn(0).delete(3)
for v in tree.audit():
    print(v.kind, "-", v.message)
