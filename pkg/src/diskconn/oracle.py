"""Brute-force ground truth and deterministic instance generators.

Everything here is quadratic on purpose. It exists to check
:class:`~diskconn.connectivity.DiskConnectivity`, never to be fast.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .dsu import DsuForest
from .geometry import Site, intersection_block, intersects_many

__all__ = [
    "PRESETS",
    "GeneratorConfig",
    "BruteForceOracle",
    "generate",
    "bfs_components",
    "same_partition",
    "radius_ratio",
]

PRESETS = ("uniform", "heavy_tail", "clustered", "tangent_chain")


@dataclass(frozen=True)
class GeneratorConfig:
    """Parameters of a synthetic instance.

    Centers fall in the square ``[0, box]^2``. ``uniform`` and ``clustered``
    draw radii uniformly from ``[radius_min, radius_max]``; ``heavy_tail``
    draws ``pareto_scale * Lomax(pareto_shape)`` (floored at
    ``pareto_scale * 1e-3``, capped at ``box``); ``clustered`` spreads points
    around ``ceil(sqrt(n))`` Gaussian centers of deviation ``cluster_sigma``;
    ``tangent_chain`` lays out collinear, consecutively tangent disks with
    radii on a 1/8 grid and inserts them in shuffled order.

    The random stream is numpy's PCG64 seeded with ``seed``.
    """

    preset: str = "uniform"
    n: int = 100
    seed: int = 0
    box: float = 100.0
    radius_min: float = 0.5
    radius_max: float = 1.5
    pareto_shape: float = 1.5
    pareto_scale: float = 0.5
    cluster_sigma: float = 3.0

    def __post_init__(self) -> None:
        if self.preset not in PRESETS:
            raise ValueError(f"unknown preset {self.preset!r}; choose from {PRESETS}")
        if self.n < 0:
            raise ValueError("n must be >= 0")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        if not (math.isfinite(self.box) and self.box > 0):
            raise ValueError("box must be finite and > 0")
        if not (0 < self.radius_min <= self.radius_max < math.inf):
            raise ValueError("need 0 < radius_min <= radius_max < inf")
        if not (self.pareto_shape > 0 and self.pareto_scale > 0):
            raise ValueError("pareto_shape and pareto_scale must be > 0")
        if not self.cluster_sigma > 0:
            raise ValueError("cluster_sigma must be > 0")


def generate(cfg: GeneratorConfig) -> list[Site]:
    """Deterministic site list for ``cfg``; ids are ``0 .. n-1`` in list order."""
    rng = np.random.Generator(np.random.PCG64(cfg.seed))
    n = cfg.n
    if n == 0:
        return []
    if cfg.preset == "uniform":
        xy = rng.uniform(0.0, cfg.box, size=(n, 2))
        r = rng.uniform(cfg.radius_min, cfg.radius_max, size=n)
    elif cfg.preset == "heavy_tail":
        xy = rng.uniform(0.0, cfg.box, size=(n, 2))
        r = cfg.pareto_scale * rng.pareto(cfg.pareto_shape, size=n)
        r = np.clip(r, cfg.pareto_scale * 1e-3, cfg.box)
    elif cfg.preset == "clustered":
        k = math.isqrt(n - 1) + 1  # ceil(sqrt(n))
        hubs = rng.uniform(0.0, cfg.box, size=(k, 2))
        which = rng.integers(0, k, size=n)
        xy = hubs[which] + rng.normal(0.0, cfg.cluster_sigma, size=(n, 2))
        r = rng.uniform(cfg.radius_min, cfg.radius_max, size=n)
    else:
        # Dyadic radii keep every center distance and sum exactly representable,
        # so the tangencies are exact in floating point.
        eighths = rng.integers(4, 13, size=n)
        radii = eighths / 8.0
        xs = np.zeros(n)
        xs[1:] = np.cumsum(radii[:-1] + radii[1:])
        order = rng.permutation(n)
        xy = np.column_stack([xs[order], np.zeros(n)])
        r = radii[order]
    return [Site.at(i, xy[i, 0], xy[i, 1], r[i]) for i in range(n)]


def radius_ratio(sites: Sequence[Site]) -> float:
    if not sites:
        return 1.0
    radii = [s.radius for s in sites]
    return max(radii) / min(radii)


class BruteForceOracle:
    """Incremental all-pairs connectivity: each insert tests every stored disk."""

    def __init__(self) -> None:
        self.sites: list[Site] = []
        self.dsu = DsuForest()
        self._xs: list[float] = []
        self._ys: list[float] = []
        self._rs: list[float] = []
        self.pair_tests = 0

    def __len__(self) -> int:
        return len(self.sites)

    def insert(self, site: Site) -> None:
        if site.id in self.dsu:
            raise KeyError(f"site {site.id} already present")
        if self.sites:
            hit = intersects_many(site.x, site.y, site.radius, self._xs, self._ys, self._rs)
            self.pair_tests += len(self.sites)
            neighbors = [self.sites[j].id for j in np.flatnonzero(hit)]
        else:
            neighbors = []
        self.dsu.make_set(site.id)
        for other in neighbors:
            self.dsu.union(site.id, other)
        self.sites.append(site)
        self._xs.append(site.x)
        self._ys.append(site.y)
        self._rs.append(site.radius)

    def extend(self, sites: Iterable[Site]) -> None:
        for s in sites:
            self.insert(s)

    def connected(self, a: int, b: int) -> bool:
        return self.dsu.connected(a, b)

    def component_count(self) -> int:
        return self.dsu.set_count

    def labels(self) -> np.ndarray:
        """Root id per site, in insertion order."""
        return np.array([self.dsu.find(s.id) for s in self.sites], dtype=np.int64)


def bfs_components(sites: Sequence[Site], chunk: int = 512) -> np.ndarray:
    """Component label per site by graph search over the explicit disk graph.

    Labels are the position of the first site of each component. Shares only
    the intersection predicate with :class:`BruteForceOracle`.
    """
    n = len(sites)
    xs = np.array([s.x for s in sites], dtype=float)
    ys = np.array([s.y for s in sites], dtype=float)
    rs = np.array([s.radius for s in sites], dtype=float)
    adjacency: list[list[int]] = [[] for _ in range(n)]
    for start in range(0, n, chunk):
        block = intersection_block(xs, ys, rs, slice(start, min(start + chunk, n)))
        for i, j in np.argwhere(block):
            if start + i != j:
                adjacency[start + i].append(int(j))
    label = np.full(n, -1, dtype=np.int64)
    for s in range(n):
        if label[s] >= 0:
            continue
        label[s] = s
        todo = deque([s])
        while todo:
            u = todo.popleft()
            for v in adjacency[u]:
                if label[v] < 0:
                    label[v] = s
                    todo.append(v)
    return label


def same_partition(a: Sequence[int], b: Sequence[int]) -> bool:
    """True iff two label arrays induce the same partition of positions."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        return False
    fwd: dict[int, int] = {}
    back: dict[int, int] = {}
    for x, y in zip(a.tolist(), b.tolist()):
        if fwd.setdefault(x, y) != y or back.setdefault(y, x) != x:
            return False
    return True
