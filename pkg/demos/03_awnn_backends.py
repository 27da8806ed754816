# %% [markdown]
# # Additively weighted nearest neighbors
#
# A query at ``q`` returns the site minimizing ``|pq| - r_p``, i.e. the disk
# whose boundary is closest. Two backends share one contract; the
# logarithmic-method ``TieredAwnn`` must answer exactly like the flat scan.

# %%
import numpy as np

from diskconn import AwnnEntry, Point, ScanAwnn, TieredAwnn

rng = np.random.default_rng(0)
scan, tiered = ScanAwnn(), TieredAwnn()
live = []
for i in range(2000):
    e = AwnnEntry(i, Point(*rng.uniform(0, 100, 2)), -rng.pareto(1.5))
    scan.insert(e)
    tiered.insert(e)
    live.append(i)
    if rng.random() < 0.3:
        victim = live.pop(rng.integers(len(live)))
        scan.delete(victim)
        tiered.delete(victim)

queries = [Point(*q) for q in rng.uniform(0, 100, (500, 2))]
agree = sum(scan.nearest(q) == tiered.nearest(q) for q in queries)
print(f"{agree}/{len(queries)} identical answers, {len(scan)} live entries")

# %%
occupied = [i for i, block in enumerate(tiered._levels) if block is not None]
print("tiered levels in use:", occupied, "| rebuilds:", tiered.rebuilds)
print("counters scan:", scan.inserts, scan.deletes, scan.queries)
print("counters tiered:", tiered.inserts, tiered.deletes, tiered.queries)

# %% [markdown]
# Either backend can drive the connectivity structure.

# %%
from diskconn import DiskConnectivity, GeneratorConfig, generate

sites = generate(GeneratorConfig(preset="heavy_tail", n=400, seed=1))
counts = {}
for backend in ("scan", "tiered"):
    dc = DiskConnectivity(backend)
    for s in sites:
        dc.insert(s.center, s.radius)
    counts[backend] = dc.component_count()
print(counts)
