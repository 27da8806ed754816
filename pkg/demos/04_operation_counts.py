# %% [markdown]
# # Operation counts versus the naive pairwise approach
#
# Wall-clock comparisons depend on the AWNN backend, so we count operations
# instead: nearest-neighbor queries against the ``n^2/4`` budget of checking
# pairs, and the number of times any site changes leaf.

# %%
import math

from diskconn.cli import awnn_envelope, run_benchmark, run_sweep
from diskconn.oracle import PRESETS, GeneratorConfig

rows = run_sweep([500, 1000, 2000, 4000], preset="uniform", seed=42)
print(f"{'n':>6} {'queries':>9} {'n^2/4':>10} {'ratio':>8}")
for r in rows:
    print(f"{r['n']:>6} {r['awnn_queries']:>9} {r['quarter_n_squared']:>10.0f} {r['query_ratio']:>8.4f}")

# %% [markdown]
# Each move at least doubles the size of the moved site's component, so no
# site moves more than ``floor(log2 n)`` times, whatever the radii.

# %%
n = 1000
for preset in PRESETS:
    rep = run_benchmark(GeneratorConfig(preset=preset, n=n, seed=7), compare_naive=True)
    print(
        f"{preset:>13}: components={rep['components']:>4} "
        f"max moves/site={rep['max_site_moves']} (cap {math.floor(math.log2(n))}) "
        f"AWNN updates={rep['awnn_updates']} (envelope {awnn_envelope(n)}) "
        f"naive pair tests={rep['naive_pair_tests']}"
    )
