# %% [markdown]
# # Incremental connectivity of disks
#
# Insert disks one at a time and ask whether two of them are linked by a
# chain of overlapping disks. Radii can differ by any factor.

# %%
from diskconn import DiskConnectivity

dc = DiskConnectivity()
a, _ = dc.insert((0, 0), 1)
b, _ = dc.insert((10, 0), 1)
print("components:", dc.component_count(), "| a~b:", dc.connected(a, b))

# %% [markdown]
# A wide disk between them touches both, so the two components merge.
# The report lists the leaves that were hit and how many sites moved.

# %%
c, report = dc.insert((5, 0), 4.2)
print(report)
print("components:", dc.component_count(), "| a~b:", dc.connected(a, b))

# %% [markdown]
# Tangent disks count as intersecting.

# %%
d, _ = dc.insert((-2, 0), 1)
print("tangent to a:", dc.connected(a, d))

# %%
for key, value in dc.snapshot_stats().as_dict().items():
    print(f"{key:>15} {value}")
