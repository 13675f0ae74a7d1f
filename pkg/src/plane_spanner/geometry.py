"""Exact integer geometry: metrics, quadrant cones, rectangles and cone squares.

All predicates work on integer coordinates bounded by ``MAX_COORD`` so every
intermediate product fits comfortably in a signed 64-bit integer (which also
lets the vectorised numpy paths stay exact).
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property

import numpy as np

from .errors import DegenerateDirection, GeneralPositionViolation, InputError, PositionOutOfRange

MAX_COORD = 2**20

Point = tuple[int, int]


class Metric(str, Enum):
    L1 = "L1"
    L2SQUARED = "L2squared"
    LINF = "Linf"


def distance(metric: Metric | str, p: Point, q: Point) -> int:
    """Exact L1, squared L2 or L-infinity distance between two integer points."""
    dx = abs(p[0] - q[0])
    dy = abs(p[1] - q[1])
    metric = Metric(metric)
    if metric is Metric.L1:
        return dx + dy
    if metric is Metric.LINF:
        return max(dx, dy)
    return dx * dx + dy * dy


def d2(p: Point, q: Point) -> float:
    """Euclidean length; the only place a square root is taken."""
    return float(np.sqrt(distance(Metric.L2SQUARED, p, q)))


def cone_of(u: Point, v: Point) -> int:
    """Index of the open quadrant of ``u`` that contains ``v`` (0..3, CCW from NE)."""
    dx = v[0] - u[0]
    dy = v[1] - u[1]
    if dx == 0 or dy == 0:
        raise DegenerateDirection(f"{u} and {v} are axis-aligned")
    if dy > 0:
        return 0 if dx > 0 else 1
    return 2 if dx < 0 else 3


def orient(a: Point, b: Point, c: Point) -> int:
    """Sign of the cross product (b - a) x (c - a)."""
    det = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (det > 0) - (det < 0)


def ccw_key(center: Point):
    """Sort key ordering points by angle around ``center``, starting at the +x axis.

    Exact: uses a half-plane split and then a rational slope comparison done
    through cross products (via ``functools.cmp_to_key``).
    """
    from functools import cmp_to_key

    cx, cy = center

    def half(p: Point) -> int:
        dx, dy = p[0] - cx, p[1] - cy
        return 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1

    def cmp(p: Point, q: Point) -> int:
        hp, hq = half(p), half(q)
        if hp != hq:
            return hp - hq
        return -orient(center, p, q)

    return cmp_to_key(cmp)


@dataclass(frozen=True)
class Rect:
    """Axis-parallel rectangle R(u, w) spanned by two opposite corners."""

    u: Point
    w: Point

    @property
    def xmin(self) -> int:
        return min(self.u[0], self.w[0])

    @property
    def xmax(self) -> int:
        return max(self.u[0], self.w[0])

    @property
    def ymin(self) -> int:
        return min(self.u[1], self.w[1])

    @property
    def ymax(self) -> int:
        return max(self.u[1], self.w[1])

    def strictly_contains(self, p: Point) -> bool:
        return self.xmin < p[0] < self.xmax and self.ymin < p[1] < self.ymax


@dataclass(frozen=True)
class ConeSquare:
    """The square S_v^i(s): apex ``v`` at a corner, two sides on the rays of cone ``i``.

    ``side`` is kept exact; callers needing half-integral sides pass doubled
    coordinates.
    """

    apex: Point
    cone: int
    side: int

    def bounds(self) -> tuple[int, int, int, int]:
        x, y = self.apex
        s = self.side
        sx = 1 if self.cone in (0, 3) else -1
        sy = 1 if self.cone in (0, 1) else -1
        x0, x1 = sorted((x, x + sx * s))
        y0, y1 = sorted((y, y + sy * s))
        return x0, x1, y0, y1

    def strictly_contains(self, p: Point) -> bool:
        x0, x1, y0, y1 = self.bounds()
        return x0 < p[0] < x1 and y0 < p[1] < y1

    def on_boundary(self, p: Point) -> bool:
        x0, x1, y0, y1 = self.bounds()
        inside = x0 <= p[0] <= x1 and y0 <= p[1] <= y1
        return inside and not self.strictly_contains(p)


class PointSet:
    """Immutable sequence of integer sites; the position of a site is its node id."""

    def __init__(self, points, *, check: bool = True):
        pts = []
        for p in points:
            if len(p) != 2:
                raise InputError(f"point {p!r} is not an (x, y) pair")
            x, y = p
            if isinstance(x, bool) or isinstance(y, bool) or int(x) != x or int(y) != y:
                raise InputError(f"point {p!r} has non-integer coordinates")
            pts.append((int(x), int(y)))
        self.points: tuple[Point, ...] = tuple(pts)
        for x, y in self.points:
            if abs(x) > MAX_COORD or abs(y) > MAX_COORD:
                raise InputError(f"coordinate ({x}, {y}) exceeds bound {MAX_COORD}")
        if check:
            self.check_general_position()

    def check_general_position(self) -> None:
        seen_x: dict[int, int] = {}
        seen_y: dict[int, int] = {}
        for i, (x, y) in enumerate(self.points):
            if x in seen_x:
                raise GeneralPositionViolation(f"points {seen_x[x]} and {i} share x={x}")
            if y in seen_y:
                raise GeneralPositionViolation(f"points {seen_y[y]} and {i} share y={y}")
            seen_x[x] = i
            seen_y[y] = i

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, i: int) -> Point:
        if not 0 <= i < len(self.points):
            raise PositionOutOfRange(f"position {i} outside 0..{len(self.points) - 1}")
        return self.points[i]

    def __iter__(self):
        return iter(self.points)

    def __repr__(self) -> str:
        return f"PointSet(n={len(self)})"

    @cached_property
    def xs(self) -> np.ndarray:
        return np.array([p[0] for p in self.points], dtype=np.int64)

    @cached_property
    def ys(self) -> np.ndarray:
        return np.array([p[1] for p in self.points], dtype=np.int64)

    def cone(self, u: int, v: int) -> int:
        return cone_of(self[u], self[v])

    def dist(self, metric: Metric | str, u: int, v: int) -> int:
        return distance(metric, self[u], self[v])

    def d2(self, u: int, v: int) -> float:
        return d2(self[u], self[v])


def cone_mask(P: PointSet, v: int, i: int) -> np.ndarray:
    """Boolean mask of the points lying strictly inside cone ``i`` of ``v``."""
    dx = P.xs - P.xs[v]
    dy = P.ys - P.ys[v]
    sx = dx > 0 if i in (0, 3) else dx < 0
    sy = dy > 0 if i in (0, 1) else dy < 0
    return sx & sy


def rect_is_empty(P: PointSet, u: int, v: int) -> bool:
    """True iff no site lies strictly inside R(u, v)."""
    xu, yu = P[u]
    xv, yv = P[v]
    x0, x1 = sorted((xu, xv))
    y0, y1 = sorted((yu, yv))
    inside = (P.xs > x0) & (P.xs < x1) & (P.ys > y0) & (P.ys < y1)
    return not bool(inside.any())


def max_empty_cone_square_side(P: PointSet, v: int, i: int) -> int | None:
    """Side of S_v^i, the largest empty square anchored at ``v`` in cone ``i``.

    Returns ``None`` when the cone holds no site (the square is unbounded).
    """
    mask = cone_mask(P, v, i)
    if not mask.any():
        return None
    dinf = np.maximum(np.abs(P.xs - P.xs[v]), np.abs(P.ys - P.ys[v]))
    return int(dinf[mask].min())
