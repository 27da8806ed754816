"""Plane primitives: points, sites and the closed-disk intersection predicate.

Coordinates and radii are IEEE doubles. The intersection test is evaluated in
squared form, ``|st|^2 <= (r_s + r_t)^2``; tangent disks intersect.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Point",
    "Site",
    "euclidean_distance",
    "disks_intersect",
    "weighted_distance",
    "intersects_many",
    "intersection_block",
]


@dataclass(frozen=True, slots=True)
class Point:
    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"point coordinates must be finite, got ({self.x}, {self.y})")


@dataclass(frozen=True, slots=True)
class Site:
    """A disk: stable integer id, center and strictly positive radius."""

    id: int
    center: Point
    radius: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.radius) and self.radius > 0):
            raise ValueError(f"site radius must be finite and > 0, got {self.radius}")

    @classmethod
    def at(cls, id: int, x: float, y: float, radius: float) -> Site:
        return cls(id, Point(float(x), float(y)), float(radius))

    @property
    def x(self) -> float:
        return self.center.x

    @property
    def y(self) -> float:
        return self.center.y


def euclidean_distance(a: Point, b: Point) -> float:
    dx = a.x - b.x
    dy = a.y - b.y
    return math.sqrt(dx * dx + dy * dy)


def disks_intersect(s: Site, t: Site) -> bool:
    """True iff the closed disks of ``s`` and ``t`` share at least one point."""
    dx = s.center.x - t.center.x
    dy = s.center.y - t.center.y
    reach = s.radius + t.radius
    return dx * dx + dy * dy <= reach * reach


def weighted_distance(q: Point, s: Site) -> float:
    """Distance from ``q`` to the boundary of the disk of ``s``; negative inside.

    Uses the same arithmetic as the nearest-neighbor structures
    (``sqrt(dx*dx + dy*dy) + weight`` with ``weight = -radius``), so values
    compare bit-for-bit.
    """
    dx = q.x - s.center.x
    dy = q.y - s.center.y
    return math.sqrt(dx * dx + dy * dy) + (-s.radius)


def intersects_many(x: float, y: float, r: float, xs, ys, rs):
    """Vectorized :func:`disks_intersect` of one disk against arrays of disks.

    Same operation order as the scalar predicate, so results agree exactly.
    """
    dx = x - np.asarray(xs, dtype=float)
    dy = y - np.asarray(ys, dtype=float)
    reach = r + np.asarray(rs, dtype=float)
    return dx * dx + dy * dy <= reach * reach


def intersection_block(xs, ys, rs, rows: slice):
    """Boolean adjacency rows ``rows`` x all columns for disks given as arrays."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    rs = np.asarray(rs, dtype=float)
    dx = xs[rows, None] - xs[None, :]
    dy = ys[rows, None] - ys[None, :]
    reach = rs[rows, None] + rs[None, :]
    return dx * dx + dy * dy <= reach * reach
