"""Disjoint-set forest over site ids (union by rank, full path compression)."""

from __future__ import annotations

from typing import Hashable, Iterator

__all__ = ["DsuForest"]


class DsuForest:
    """Union-find keyed by arbitrary hashable ids.

    ``find`` compresses paths and therefore mutates; all operations need
    exclusive access. ``steps`` counts parent-pointer hops taken by ``find``.

    >>> d = DsuForest()
    >>> for i in range(3):
    ...     d.make_set(i)
    >>> d.union(0, 1)
    >>> d.connected(1, 0), d.connected(0, 2), d.set_count
    (True, False, 2)
    """

    def __init__(self) -> None:
        self._parent: dict[Hashable, Hashable] = {}
        self._rank: dict[Hashable, int] = {}
        self.set_count = 0
        self.steps = 0
        self.finds = 0

    def __len__(self) -> int:
        return len(self._parent)

    def __contains__(self, x: object) -> bool:
        return x in self._parent

    def __iter__(self) -> Iterator[Hashable]:
        return iter(self._parent)

    def make_set(self, x: Hashable) -> None:
        if x in self._parent:
            raise KeyError(f"{x!r} already present")
        self._parent[x] = x
        self._rank[x] = 0
        self.set_count += 1

    def find(self, x: Hashable) -> Hashable:
        parent = self._parent
        if x not in parent:
            raise KeyError(f"{x!r} not present")
        self.finds += 1
        root = x
        while parent[root] != root:
            root = parent[root]
            self.steps += 1
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a: Hashable, b: Hashable) -> bool:
        """Merge the sets of ``a`` and ``b``; return True if they were distinct."""
        ra = self.find(a)
        rb = self.find(b)
        if ra == rb:
            return False
        rank = self._rank
        if rank[ra] < rank[rb]:
            ra, rb = rb, ra
        self._parent[rb] = ra
        if rank[ra] == rank[rb]:
            rank[ra] += 1
        self.set_count -= 1
        return True

    def connected(self, a: Hashable, b: Hashable) -> bool:
        return self.find(a) == self.find(b)

    def path_length(self, x: Hashable) -> int:
        """Hops from ``x`` to its root, without compressing."""
        n = 0
        while self._parent[x] != x:
            x = self._parent[x]
            n += 1
        return n

    def labels(self) -> dict[Hashable, Hashable]:
        return {x: self.find(x) for x in self._parent}
