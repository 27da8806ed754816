"""Dynamic additively weighted nearest-neighbor (AWNN) structures.

A query with point ``q`` returns the stored entry minimizing
``|pq| + w_p``. Ties on the value go to the smallest ``site_id``.

Two backends share the :class:`AwnnStructure` contract:

* :class:`ScanAwnn` keeps entries in flat growable arrays with swap-remove
  deletion; updates are O(1) and a query is one vectorized O(n) pass.
* :class:`TieredAwnn` is a logarithmic-method decomposition into static
  blocks of power-of-two size with tombstoned deletions and a global rebuild
  once tombstones outnumber half of the live entries.

Neither backend reaches the polylogarithmic bounds of the shifted-quadtree
construction; the component tree only relies on the contract.
"""

from __future__ import annotations

import abc
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

import numpy as np

from .geometry import Point, Site

__all__ = [
    "AwnnEntry",
    "AwnnStructure",
    "ScanAwnn",
    "TieredAwnn",
    "AWNN_BACKENDS",
    "awnn_factory",
]


@dataclass(frozen=True, slots=True)
class AwnnEntry:
    site_id: int
    center: Point
    weight: float

    @classmethod
    def from_site(cls, site: Site) -> AwnnEntry:
        return cls(site.id, site.center, -site.radius)


def _argmin_entry(ids: np.ndarray, vals: np.ndarray) -> tuple[int, float]:
    best = vals.min()
    tied = ids[vals == best]
    return int(tied.min()), float(best)


def _weighted_values(qx, qy, xs, ys, ws):
    dx = qx - xs
    dy = qy - ys
    return np.sqrt(dx * dx + dy * dy) + ws


class AwnnStructure(abc.ABC):
    """Contract shared by all AWNN backends.

    Mutation requires exclusive access; read-only queries may run
    concurrently between mutations. ``inserts``, ``deletes`` and ``queries``
    count calls that completed.
    """

    def __init__(self) -> None:
        self.inserts = 0
        self.deletes = 0
        self.queries = 0

    @abc.abstractmethod
    def __len__(self) -> int: ...

    @abc.abstractmethod
    def __contains__(self, site_id: object) -> bool: ...

    @abc.abstractmethod
    def ids(self) -> Iterator[int]:
        """Iterate over stored site ids (no particular order)."""

    @abc.abstractmethod
    def _insert(self, entry: AwnnEntry) -> None: ...

    @abc.abstractmethod
    def _delete(self, site_id: int) -> None: ...

    @abc.abstractmethod
    def _nearest(self, qx: float, qy: float) -> tuple[int, float] | None: ...

    def insert(self, entry: AwnnEntry) -> None:
        if entry.site_id in self:
            raise KeyError(f"site {entry.site_id} already stored")
        self._insert(entry)
        self.inserts += 1

    def delete(self, site_id: int) -> None:
        if site_id not in self:
            raise KeyError(f"site {site_id} not stored")
        self._delete(site_id)
        self.deletes += 1

    def extend(self, entries: Iterable[AwnnEntry]) -> None:
        for entry in entries:
            self.insert(entry)

    def nearest(self, q: Point) -> tuple[int, float] | None:
        """Return ``(site_id, |pq| + w_p)`` for the minimizing entry, or None if empty."""
        self.queries += 1
        if len(self) == 0:
            return None
        return self._nearest(q.x, q.y)


class ScanAwnn(AwnnStructure):
    """Flat-array backend; the reference implementation."""

    def __init__(self, capacity: int = 4) -> None:
        super().__init__()
        capacity = max(1, capacity)
        self._ids = np.empty(capacity, dtype=np.int64)
        self._xs = np.empty(capacity)
        self._ys = np.empty(capacity)
        self._ws = np.empty(capacity)
        self._slot: dict[int, int] = {}

    def __len__(self) -> int:
        return len(self._slot)

    def __contains__(self, site_id: object) -> bool:
        return site_id in self._slot

    def ids(self) -> Iterator[int]:
        return iter(self._slot)

    def _grow(self) -> None:
        cap = 2 * len(self._ids)
        for name in ("_ids", "_xs", "_ys", "_ws"):
            old = getattr(self, name)
            new = np.empty(cap, dtype=old.dtype)
            new[: len(old)] = old
            setattr(self, name, new)

    def _insert(self, entry: AwnnEntry) -> None:
        n = len(self._slot)
        if n == len(self._ids):
            self._grow()
        self._ids[n] = entry.site_id
        self._xs[n] = entry.center.x
        self._ys[n] = entry.center.y
        self._ws[n] = entry.weight
        self._slot[entry.site_id] = n

    def _delete(self, site_id: int) -> None:
        slot = self._slot.pop(site_id)
        last = len(self._slot)
        if slot != last:
            moved = int(self._ids[last])
            self._ids[slot] = moved
            self._xs[slot] = self._xs[last]
            self._ys[slot] = self._ys[last]
            self._ws[slot] = self._ws[last]
            self._slot[moved] = slot

    def _nearest(self, qx: float, qy: float) -> tuple[int, float]:
        n = len(self._slot)
        vals = _weighted_values(qx, qy, self._xs[:n], self._ys[:n], self._ws[:n])
        return _argmin_entry(self._ids[:n], vals)


class _Block:
    """Immutable arrays plus a liveness mask; built once, never grown."""

    __slots__ = ("ids", "xs", "ys", "ws", "alive", "live")

    def __init__(self, entries: list[tuple[int, float, float, float]]) -> None:
        arr = np.array(entries, dtype=float).reshape(-1, 4)
        self.ids = arr[:, 0].astype(np.int64)
        self.xs = arr[:, 1].copy()
        self.ys = arr[:, 2].copy()
        self.ws = arr[:, 3].copy()
        self.alive = np.ones(len(entries), dtype=bool)
        self.live = len(entries)

    def live_entries(self) -> list[tuple[int, float, float, float]]:
        return [
            (int(i), float(x), float(y), float(w))
            for i, x, y, w, a in zip(self.ids, self.xs, self.ys, self.ws, self.alive)
            if a
        ]


class TieredAwnn(AwnnStructure):
    """Logarithmic-method backend over static blocks.

    Level ``i`` holds at most one block built from ``2**i`` entries. An
    insertion merges the new entry with all occupied levels below the first
    free one, like incrementing a binary counter.
    """

    def __init__(self) -> None:
        super().__init__()
        self._levels: list[_Block | None] = []
        self._where: dict[int, tuple[_Block, int]] = {}
        self._tombstones = 0
        self.rebuilds = 0

    def __len__(self) -> int:
        return len(self._where)

    def __contains__(self, site_id: object) -> bool:
        return site_id in self._where

    def ids(self) -> Iterator[int]:
        return iter(self._where)

    @property
    def tombstones(self) -> int:
        return self._tombstones

    def _place(self, level: int, rows: list[tuple[int, float, float, float]]) -> None:
        block = _Block(rows)
        while len(self._levels) <= level:
            self._levels.append(None)
        self._levels[level] = block
        for slot, row in enumerate(rows):
            self._where[row[0]] = (block, slot)

    def _insert(self, entry: AwnnEntry) -> None:
        rows = [(entry.site_id, entry.center.x, entry.center.y, entry.weight)]
        level = 0
        while level < len(self._levels) and self._levels[level] is not None:
            block = self._levels[level]
            self._tombstones -= len(block.ids) - block.live
            rows.extend(block.live_entries())
            self._levels[level] = None
            level += 1
        # Dropped tombstones can leave fewer rows than 2**level; the block
        # still belongs to the first free level.
        self._place(level, rows)

    def _delete(self, site_id: int) -> None:
        block, slot = self._where.pop(site_id)
        block.alive[slot] = False
        block.live -= 1
        self._tombstones += 1
        if self._tombstones > len(self._where) / 2:
            self._rebuild()

    def _rebuild(self) -> None:
        rows = []
        for block in self._levels:
            if block is not None:
                rows.extend(block.live_entries())
        rows.sort()
        self._levels = []
        self._where = {}
        self._tombstones = 0
        self.rebuilds += 1
        start = 0
        n = len(rows)
        level = 0
        while n >> level:
            if (n >> level) & 1:
                size = 1 << level
                self._place(level, rows[start : start + size])
                start += size
            level += 1

    def _nearest(self, qx: float, qy: float) -> tuple[int, float] | None:
        best: tuple[int, float] | None = None
        for block in self._levels:
            if block is None or block.live == 0:
                continue
            vals = _weighted_values(qx, qy, block.xs, block.ys, block.ws)
            if block.live < len(block.ids):
                vals = np.where(block.alive, vals, np.inf)
            cand = _argmin_entry(block.ids, vals)
            if best is None or cand[1] < best[1] or (cand[1] == best[1] and cand[0] < best[0]):
                best = cand
        return best


AWNN_BACKENDS: dict[str, Callable[[], AwnnStructure]] = {
    "scan": ScanAwnn,
    "tiered": TieredAwnn,
}


def awnn_factory(backend: str | Callable[[], AwnnStructure]) -> Callable[[], AwnnStructure]:
    """Resolve a backend name (``"scan"`` or ``"tiered"``) or pass a factory through."""
    if callable(backend):
        return backend
    try:
        return AWNN_BACKENDS[backend]
    except KeyError:
        raise ValueError(
            f"unknown AWNN backend {backend!r}; choose from {sorted(AWNN_BACKENDS)}"
        ) from None
