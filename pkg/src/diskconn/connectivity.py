"""Incremental connectivity for disk graphs.

:class:`DiskConnectivity` pairs a :class:`~diskconn.component_tree.ComponentTree`,
which discovers the components a new disk touches, with a
:class:`~diskconn.dsu.DsuForest` that answers queries.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Callable, Sequence

from .awnn import AwnnStructure
from .component_tree import ComponentTree, MergeReport, Violation
from .dsu import DsuForest
from .geometry import Point, Site

__all__ = ["DiskConnectivity", "Stats"]


@dataclass(frozen=True)
class Stats:
    """Monotone operation counters; field order is the STATS output order."""

    insertions: int = 0
    queries: int = 0
    components: int = 0
    height: int = 0
    expansions: int = 0
    sites_moved: int = 0
    max_site_moves: int = 0
    awnn_inserts: int = 0
    awnn_deletes: int = 0
    awnn_queries: int = 0
    dsu_unions: int = 0

    def as_dict(self) -> dict[str, int]:
        return asdict(self)


class DiskConnectivity:
    """Insert disks, ask whether two of them lie in the same component.

    >>> dc = DiskConnectivity()
    >>> a, _ = dc.insert((0, 0), 1)
    >>> b, _ = dc.insert((10, 0), 1)
    >>> dc.connected(a, b)
    False
    >>> c, report = dc.insert((5, 0), 4.2)
    >>> dc.connected(a, b), report.merged, dc.component_count()
    (True, 2, 1)

    Not thread-safe: ``connected`` compresses DSU paths.
    """

    def __init__(self, awnn: str | Callable[[], AwnnStructure] = "scan") -> None:
        self.tree = ComponentTree(awnn)
        self.dsu = DsuForest()
        self._next_id = 0
        self._queries = 0
        self._unions = 0

    def __len__(self) -> int:
        return self._next_id

    def site(self, site_id: int) -> Site:
        return self.tree.site(site_id)

    def insert(self, center: Point | Sequence[float], radius: float) -> tuple[int, MergeReport]:
        """Add a disk; return its new id and the tree's merge report."""
        if not isinstance(center, Point):
            x, y = center
            center = Point(float(x), float(y))
        radius = float(radius)
        if not (math.isfinite(radius) and radius > 0):
            raise ValueError(f"radius must be finite and > 0, got {radius}")
        site = Site(self._next_id, center, radius)
        report = self.tree.insert_site(site)
        self._next_id += 1
        self.dsu.make_set(site.id)
        for rep in report.representatives:
            if self.dsu.union(rep, site.id):
                self._unions += 1
        return site.id, report

    def connected(self, a: int, b: int) -> bool:
        self._queries += 1
        return self.dsu.connected(a, b)

    def component_count(self) -> int:
        return self.dsu.set_count

    def audit(self) -> list[Violation]:
        out = self.tree.audit()
        if self.dsu.set_count != self.tree.component_count:
            out.append(Violation(
                "dsu_partition",
                f"dsu has {self.dsu.set_count} sets, tree has {self.tree.component_count} components",
            ))
            return out
        for comp in self.tree.components():
            root = self.dsu.find(comp[0])
            if any(self.dsu.find(s) != root for s in comp[1:]):
                out.append(Violation("dsu_partition", f"component of {comp[0]} split in dsu"))
        return out

    def snapshot_stats(self) -> Stats:
        t = self.tree.stats
        return Stats(
            insertions=t.insertions,
            queries=self._queries,
            components=self.dsu.set_count,
            height=self.tree.height,
            expansions=t.expansions,
            sites_moved=t.sites_moved,
            max_site_moves=max(self.tree.moves.values(), default=0),
            awnn_inserts=t.awnn_inserts,
            awnn_deletes=t.awnn_deletes,
            awnn_queries=t.awnn_queries,
            dsu_unions=self._unions,
        )
