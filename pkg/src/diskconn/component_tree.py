"""Component tree: connected components at the leaves of a complete binary tree.

Every node owns an AWNN structure over the sites of all components stored in
its subtree, with weight ``-radius`` per site. The nearest entry to a query
center ``q`` is then the disk whose boundary is closest to ``q``, and a disk
``D_s`` meets some disk below a node iff that node's minimal weighted value is
at most ``r_s``. Empty leaves wait in a FIFO queue; when it runs dry the tree
doubles.

Nodes use heap indexing (root 0, children ``2i+1`` and ``2i+2``). Leaves are
addressed by their *position* ``0 .. 2**height - 1``, which survives tree
doubling because the old tree always becomes the left subtree of the new root.
:meth:`ComponentTree.leaf_node` maps a position to its heap index.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from .awnn import AwnnEntry, AwnnStructure, awnn_factory
from .geometry import Site, disks_intersect, intersection_block

__all__ = ["ComponentTree", "MergeReport", "TreeStats", "Violation"]


@dataclass(frozen=True)
class MergeReport:
    """What one :meth:`ComponentTree.insert_site` call did.

    ``intersected_components`` are leaf positions in ascending order and
    ``representatives`` holds one site id of each, taken before the merge.
    """

    inserted: int
    intersected_components: tuple[int, ...]
    target_leaf: int
    sites_moved: int
    expanded: bool
    representatives: tuple[int, ...] = ()

    @property
    def merged(self) -> int:
        return len(self.intersected_components)


@dataclass
class TreeStats:
    insertions: int = 0
    awnn_inserts: int = 0
    awnn_deletes: int = 0
    awnn_queries: int = 0
    sites_moved: int = 0
    expansions: int = 0
    # leaves scanned because a nearest-neighbor value fell within rounding slack of r_s
    tie_scans: int = 0


@dataclass(frozen=True)
class Violation:
    """One failed audit check.

    ``kind`` is one of ``"site_placement"``, ``"leaf_connectivity"``,
    ``"cross_leaf_edge"``, ``"awnn_contents"``, ``"empty_queue"`` or
    ``"tree_shape"``.
    """

    kind: str
    message: str


class ComponentTree:
    """Insertion-only component tree over disks.

    Parameters
    ----------
    awnn : str or callable
        ``"scan"`` (default), ``"tiered"`` or a zero-argument factory
        returning an :class:`~diskconn.awnn.AwnnStructure`.

    Single writer: every method, including the read-only
    :meth:`find_intersected_components`, expects exclusive access while a
    mutation may be in flight.
    """

    def __init__(self, awnn: str | Callable[[], AwnnStructure] = "scan") -> None:
        self._make_awnn = awnn_factory(awnn)
        self.height = 0
        self._nodes: list[AwnnStructure] = [self._make_awnn()]
        self._leaves: list[list[int]] = [[]]
        self._queue: deque[int] = deque([0])
        self._sites: dict[int, Site] = {}
        self._entries: dict[int, AwnnEntry] = {}
        self._leaf_of: dict[int, int] = {}
        self.moves: dict[int, int] = {}
        self.stats = TreeStats()
        self.max_components = 0
        self._max_radius = 0.0
        self._max_coord = 0.0

    # -- shape and addressing -------------------------------------------------

    @property
    def leaf_count(self) -> int:
        return 1 << self.height

    @property
    def node_count(self) -> int:
        return len(self._nodes)

    @property
    def component_count(self) -> int:
        return self.leaf_count - len(self._queue)

    @property
    def empty_queue(self) -> tuple[int, ...]:
        return tuple(self._queue)

    def __len__(self) -> int:
        return len(self._sites)

    def __contains__(self, site_id: object) -> bool:
        return site_id in self._sites

    def site(self, site_id: int) -> Site:
        return self._sites[site_id]

    def sites(self) -> list[Site]:
        return list(self._sites.values())

    def leaf_of(self, site_id: int) -> int:
        return self._leaf_of[site_id]

    def component(self, leaf: int) -> tuple[int, ...]:
        """Site ids stored at leaf position ``leaf``."""
        return tuple(self._leaves[leaf])

    def components(self) -> list[tuple[int, ...]]:
        return [tuple(c) for c in self._leaves if c]

    def awnn(self, node: int) -> AwnnStructure:
        return self._nodes[node]

    def leaf_node(self, leaf: int) -> int:
        if not 0 <= leaf < self.leaf_count:
            raise IndexError(f"leaf position {leaf} out of range for height {self.height}")
        return self.leaf_count - 1 + leaf

    def leaf_position(self, node: int) -> int:
        pos = node - (self.leaf_count - 1)
        if not 0 <= pos < self.leaf_count:
            raise IndexError(f"node {node} is not a leaf at height {self.height}")
        return pos

    def is_leaf(self, node: int) -> bool:
        return node >= self.leaf_count - 1

    @staticmethod
    def lca(a: int, b: int) -> int:
        """Lowest common ancestor of heap indices ``a`` and ``b``.

        The larger index is never an ancestor of the smaller one, so lifting
        it one level cannot skip past the LCA.
        """
        if a < 0 or b < 0:
            raise IndexError("node indices are nonnegative")
        while a != b:
            if a > b:
                a = (a - 1) >> 1
            else:
                b = (b - 1) >> 1
        return a

    def _path_up(self, node: int, stop: int = -1) -> list[int]:
        """Heap indices from ``node`` up to the root, or up to but excluding ``stop``."""
        path = []
        while node != stop:
            path.append(node)
            if node == 0:
                break
            node = (node - 1) >> 1
        return path

    # -- AWNN bookkeeping -------------------------------------------------------

    def _awnn_insert(self, nodes: Iterable[int], ids: list[int]) -> None:
        entries = [self._entries[i] for i in ids]
        for node in nodes:
            awnn = self._nodes[node]
            for entry in entries:
                awnn.insert(entry)
            self.stats.awnn_inserts += len(entries)

    def _awnn_delete(self, nodes: Iterable[int], ids: list[int]) -> None:
        for node in nodes:
            awnn = self._nodes[node]
            for sid in ids:
                awnn.delete(sid)
            self.stats.awnn_deletes += len(ids)

    def _register(self, site: Site, leaf: int) -> None:
        self._sites[site.id] = site
        self._entries[site.id] = AwnnEntry.from_site(site)
        self._leaf_of[site.id] = leaf
        self.moves[site.id] = 0
        self._max_radius = max(self._max_radius, site.radius)
        self._max_coord = max(self._max_coord, abs(site.x), abs(site.y))

    # -- structural operations ----------------------------------------------

    def expand_tree(self) -> None:
        """Double the tree: old tree becomes the left child of a fresh root.

        The new root's AWNN is rebuilt from the old root's entries, and every
        new leaf is queued left to right. Only legal when no leaf is empty.
        """
        if self._queue:
            raise RuntimeError("expand_tree requires an empty queue of empty leaves")
        h = self.height
        old = self._nodes
        nodes: list[AwnnStructure | None] = [None] * ((1 << (h + 2)) - 1)
        root = self._make_awnn()
        ids = list(old[0].ids())
        ids.sort()
        for sid in ids:
            root.insert(self._entries[sid])
        self.stats.awnn_inserts += len(ids)
        nodes[0] = root
        for depth in range(h + 1):
            width = 1 << depth
            src = width - 1
            dst = 2 * width - 1
            nodes[dst : dst + width] = old[src : src + width]
            nodes[dst + width : dst + 2 * width] = [self._make_awnn() for _ in range(width)]
        self._nodes = nodes  # type: ignore[assignment]
        first_new = 1 << h
        self._leaves.extend([] for _ in range(first_new))
        self._queue.extend(range(first_new, 2 * first_new))
        self.height = h + 1
        self.stats.expansions += 1

    def insert_isolated_component(self, sites: Iterable[Site]) -> int:
        """Store a component that touches nothing already stored; return its leaf.

        The caller guarantees the component is connected and isolated;
        :meth:`audit` detects violations after the fact.
        """
        sites = list(sites)
        if not sites:
            raise ValueError("component must contain at least one site")
        ids = [s.id for s in sites]
        if len(set(ids)) != len(ids):
            raise KeyError("duplicate site id within component")
        for sid in ids:
            if sid in self._sites:
                raise KeyError(f"site {sid} already stored")
        if not self._queue:
            self.expand_tree()
        leaf = self._queue.popleft()
        for s in sites:
            self._register(s, leaf)
        self._leaves[leaf] = ids
        self._awnn_insert(self._path_up(self.leaf_node(leaf)), ids)
        self.max_components = max(self.max_components, self.component_count)
        return leaf

    def _slack(self, site: Site) -> float:
        # Bound on the rounding gap between sqrt(d2) - r_t <= r_s and the
        # squared predicate, for every stored t.
        scale = abs(site.x) + abs(site.y) + site.radius + self._max_coord + 2 * self._max_radius
        return 1e-12 * scale

    def _probe(self, node: int, site: Site, limit: float) -> tuple[int, float] | None:
        self.stats.awnn_queries += 1
        hit = self._nodes[node].nearest(site.center)
        if hit is None or hit[1] > limit:
            return None
        return hit

    def _leaf_hit(self, node: int, hit: tuple[int, float], site: Site) -> bool:
        if disks_intersect(site, self._sites[hit[0]]):
            return True
        self.stats.tie_scans += 1
        members = self._leaves[self.leaf_position(node)]
        return any(disks_intersect(site, self._sites[t]) for t in members)

    def find_intersected_components(self, site: Site) -> list[int]:
        """Leaf positions of all components containing a disk that meets ``site``.

        Descends from the root and enters a child only when its nearest
        weighted entry is within ``r_s`` (plus a rounding slack); at a leaf the
        answer is confirmed with :func:`disks_intersect`, so the result agrees
        exactly with an exhaustive scan using that predicate.
        """
        limit = site.radius + self._slack(site)
        found: list[int] = []
        hit = self._probe(0, site, limit)
        if hit is None:
            return found
        stack = [(0, hit)]
        while stack:
            node, hit = stack.pop()
            if self.is_leaf(node):
                if self._leaf_hit(node, hit, site):
                    found.append(self.leaf_position(node))
                continue
            # right pushed first so leaves pop in ascending order
            for child in (2 * node + 2, 2 * node + 1):
                child_hit = self._probe(child, site, limit)
                if child_hit is not None:
                    stack.append((child, child_hit))
        return found

    def insert_site(self, site: Site) -> MergeReport:
        """Insert one disk, merging every component it touches into the largest."""
        if site.id in self._sites:
            raise KeyError(f"site {site.id} already stored")
        hits = self.find_intersected_components(site)
        self.stats.insertions += 1
        if not hits:
            expansions = self.stats.expansions
            leaf = self.insert_isolated_component([site])
            return MergeReport(site.id, (), leaf, 0, self.stats.expansions > expansions)

        target = min(hits, key=lambda p: (-len(self._leaves[p]), p))
        reps = tuple(self._leaves[p][0] for p in hits)
        target_node = self.leaf_node(target)

        self._register(site, target)
        self._leaves[target].append(site.id)
        self._awnn_insert(self._path_up(target_node), [site.id])

        moved = 0
        for leaf in hits:
            if leaf == target:
                continue
            ids = self._leaves[leaf]
            self._leaves[leaf] = []
            node = self.leaf_node(leaf)
            top = self.lca(node, target_node)
            self._awnn_delete(self._path_up(node, top), ids)
            self._awnn_insert(self._path_up(target_node, top), ids)
            self._leaves[target].extend(ids)
            for sid in ids:
                self._leaf_of[sid] = target
                self.moves[sid] += 1
            self._queue.append(leaf)
            moved += len(ids)
        self.stats.sites_moved += moved
        return MergeReport(site.id, tuple(hits), target, moved, False, reps)

    # -- verification ---------------------------------------------------------

    def audit(self, all_sites: Iterable[Site | int] | None = None) -> list[Violation]:
        """Check every structural invariant; return the violations found.

        ``all_sites`` is the universe the tree should hold (sites or ids);
        defaults to the tree's own site table.
        """
        out: list[Violation] = []
        h = self.height
        n_leaves = 1 << h

        if len(self._nodes) != 2 * n_leaves - 1 or len(self._leaves) != n_leaves:
            out.append(Violation(
                "tree_shape",
                f"height {h}: {len(self._nodes)} nodes, {len(self._leaves)} leaves",
            ))
            return out
        if any(node is None for node in self._nodes):
            out.append(Violation("tree_shape", "missing AWNN at some node"))
            return out

        # placement
        if all_sites is None:
            universe = set(self._sites)
        else:
            universe = {s.id if isinstance(s, Site) else int(s) for s in all_sites}
        seen: dict[int, int] = {}
        for leaf, comp in enumerate(self._leaves):
            for sid in comp:
                if sid in seen:
                    out.append(Violation(
                        "site_placement", f"site {sid} in leaves {seen[sid]} and {leaf}"))
                seen[sid] = leaf
                if self._leaf_of.get(sid) != leaf:
                    out.append(Violation(
                        "site_placement",
                        f"site table puts {sid} at {self._leaf_of.get(sid)}, found at leaf {leaf}",
                    ))
        for sid in sorted(universe - seen.keys()):
            out.append(Violation("site_placement", f"site {sid} is in no leaf"))
        for sid in sorted(seen.keys() - universe):
            out.append(Violation("site_placement", f"leaf holds unknown site {sid}"))
        if set(self._sites) != set(seen):
            out.append(Violation("site_placement", "site table disagrees with leaf contents"))

        # queue exactness
        queue = list(self._queue)
        if len(queue) != len(set(queue)):
            out.append(Violation("empty_queue", "queue holds duplicate leaves"))
        empty = {i for i, c in enumerate(self._leaves) if not c}
        if set(queue) != empty:
            out.append(Violation(
                "empty_queue",
                f"queue {sorted(set(queue))} != empty leaves {sorted(empty)}",
            ))

        # AWNN contents, bottom-up
        below: list[set[int]] = [set()] * len(self._nodes)
        for node in range(len(self._nodes) - 1, -1, -1):
            if node >= n_leaves - 1:
                expect = set(self._leaves[node - (n_leaves - 1)])
            else:
                expect = below[2 * node + 1] | below[2 * node + 2]
            below[node] = expect
            awnn = self._nodes[node]
            got = set(awnn.ids())
            if got != expect or len(awnn) != len(expect):
                missing = sorted(expect - got)[:5]
                extra = sorted(got - expect)[:5]
                out.append(Violation(
                    "awnn_contents",
                    f"node {node}: missing {missing}, unexpected {extra}",
                ))
                continue
            for sid in got:
                entry = self._entries.get(sid)
                site = self._sites.get(sid)
                if entry is None or site is None or entry.weight != -site.radius:
                    out.append(Violation("awnn_contents", f"node {node}: bad weight for {sid}"))
                    break

        out.extend(self._audit_graph(seen))
        return out

    def _audit_graph(self, seen: dict[int, int], chunk: int = 512) -> list[Violation]:
        out: list[Violation] = []
        ids = sorted(i for i in seen if i in self._sites)
        if not ids:
            return out
        xs = np.array([self._sites[i].x for i in ids])
        ys = np.array([self._sites[i].y for i in ids])
        rs = np.array([self._sites[i].radius for i in ids])
        labels = np.array([seen[i] for i in ids])

        for start in range(0, len(ids), chunk):
            rows = slice(start, min(start + chunk, len(ids)))
            adj = intersection_block(xs, ys, rs, rows)
            cross = adj & (labels[rows, None] != labels[None, :])
            if cross.any():
                i, j = np.argwhere(cross)[0]
                a, b = ids[start + i], ids[j]
                out.append(Violation(
                    "cross_leaf_edge",
                    f"sites {a} (leaf {seen[a]}) and {b} (leaf {seen[b]}) intersect",
                ))
                break

        index = {sid: k for k, sid in enumerate(ids)}
        for leaf, comp in enumerate(self._leaves):
            if len(comp) < 2:
                continue
            idx = np.array([index[s] for s in comp if s in index])
            cx, cy, cr = xs[idx], ys[idx], rs[idx]
            reached = np.zeros(len(idx), dtype=bool)
            reached[0] = True
            frontier = np.array([0])
            while frontier.size:
                new = np.zeros(len(idx), dtype=bool)
                for k in range(0, frontier.size, chunk):
                    new |= intersection_block(cx, cy, cr, frontier[k : k + chunk]).any(axis=0)
                new &= ~reached
                reached |= new
                frontier = np.flatnonzero(new)
            if not reached.all():
                out.append(Violation(
                    "leaf_connectivity",
                    f"leaf {leaf}: {int((~reached).sum())} of {len(idx)} sites unreachable",
                ))
        return out
