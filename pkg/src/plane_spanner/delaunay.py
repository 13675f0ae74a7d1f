"""L-infinity Delaunay triangulation via the empty axis-parallel square test.

A pair (u, v) is an edge iff some axis-parallel square has both on its
boundary and no site in its interior.  Normalise so that v lies up-right of u
with dx >= dy.  Every square through both points then belongs to one
connected family: squares with u on the left side and v on the top side
(side >= dx), squares of side exactly dx spanning [u.x, v.x] horizontally,
and squares with u on the bottom and v on the right (side >= dx).  Along the
two unbounded branches a site only ever blocks an upper ray of sides, so an
empty square exists iff one of the side-dx squares [u.x, v.x] x [b, b + dx],
b in [v.y - dx, u.y], is empty.  Sites in the vertical strip below u push b
up, sites above v push it down; the feasible interval is [lo, hi].
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import DegenerateSquareWitness
from .geometry import PointSet, ccw_key


def _normalised(P: PointSet, u: int, v: int):
    """Return site coordinates mapped so that v - u has positive dx >= dy > 0."""
    xs, ys = P.xs, P.ys
    ux, uy = P[u]
    vx, vy = P[v]
    if vx < ux:
        xs, ux, vx = -xs, -ux, -vx
    if vy < uy:
        ys, uy, vy = -ys, -uy, -vy
    if vy - uy > vx - ux:
        xs, ys = ys, xs
        ux, uy, vx, vy = uy, ux, vy, vx
    return xs, ys, (ux, uy), (vx, vy)


def witness_interval(P: PointSet, u: int, v: int) -> tuple[int, int, int] | None:
    """Feasible bottom offsets [lo, hi] of side-d∞ witness squares, plus that side.

    Coordinates are in the normalised frame of ``_normalised``.  Returns None
    when R(u, v) already contains a site.
    """
    xs, ys, (ux, uy), (vx, vy) = _normalised(P, u, v)
    side = vx - ux
    strip = (xs > ux) & (xs < vx)
    sy = ys[strip]
    if ((sy > uy) & (sy < vy)).any():
        return None
    lo = vy - side
    hi = uy
    below = sy[sy < uy]
    if below.size:
        lo = max(lo, int(below.max()))
    above = sy[sy > vy]
    if above.size:
        hi = min(hi, int(above.min()) - side)
    return lo, hi, side


def is_linf_delaunay_edge(P: PointSet, u: int, v: int, *, strict: bool = True) -> bool:
    """True iff an empty axis-parallel square has both ``u`` and ``v`` on its boundary.

    With ``strict`` set, a pair whose only witness square carries four or more
    sites on its boundary raises DegenerateSquareWitness.
    """
    if u == v:
        raise ValueError("u and v must differ")
    found = witness_interval(P, u, v)
    if found is None:
        return False
    lo, hi, side = found
    if lo > hi:
        return False
    if strict and lo == hi:
        xs, ys, (ux, _), (vx, _) = _normalised(P, u, v)
        inside = (xs >= ux) & (xs <= vx) & (ys >= lo) & (ys <= lo + side)
        if int(inside.sum()) >= 4:
            raise DegenerateSquareWitness(
                f"pair ({u}, {v}) has a unique witness square with {int(inside.sum())} boundary sites"
            )
    return True


def empty_rectangle_pairs(P: PointSet) -> set[tuple[int, int]]:
    """Pairs (u, v), u < v, whose spanned rectangle R(u, v) is empty.

    For each site and quadrant these are the Pareto-minimal sites of the
    quadrant (with respect to distance from the apex along each axis).
    """
    n = len(P)
    pairs: set[tuple[int, int]] = set()
    for u in range(n):
        dx = P.xs - P.xs[u]
        dy = P.ys - P.ys[u]
        for sx, sy in ((1, 1), (-1, 1), (-1, -1), (1, -1)):
            ax, ay = sx * dx, sy * dy
            idx = np.flatnonzero((ax > 0) & (ay > 0))
            if idx.size == 0:
                continue
            idx = idx[np.argsort(ax[idx], kind="stable")]
            cy = ay[idx]
            prev_min = np.minimum.accumulate(np.concatenate(([np.iinfo(np.int64).max], cy[:-1])))
            for v in idx[cy < prev_min]:
                v = int(v)
                pairs.add((u, v) if u < v else (v, u))
    return pairs


@dataclass(frozen=True)
class Triangulation:
    """Plane straight-line graph with a rotation system (CCW neighbour rings)."""

    points: PointSet
    edges: frozenset[tuple[int, int]]
    rings: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.points)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def neighbors(self, u: int) -> tuple[int, ...]:
        return self.rings[u]

    @cached_property
    def faces(self) -> list[list[int]]:
        """Faces as vertex cycles; bounded faces run CCW, the outer face CW."""
        return extract_faces(self.rings)


def build_rings(points: PointSet, edges) -> tuple[tuple[int, ...], ...]:
    adj: list[list[int]] = [[] for _ in range(len(points))]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    rings = []
    for u, nbrs in enumerate(adj):
        key = ccw_key(points[u])
        rings.append(tuple(sorted(nbrs, key=lambda w: key(points[w]))))
    return tuple(rings)


def extract_faces(rings) -> list[list[int]]:
    """Walk every half-edge once; the next half-edge turns to the clockwise neighbour."""
    pos = [{w: k for k, w in enumerate(ring)} for ring in rings]
    seen: set[tuple[int, int]] = set()
    faces = []
    for u, ring in enumerate(rings):
        for v in ring:
            if (u, v) in seen:
                continue
            face = []
            a, b = u, v
            while (a, b) not in seen:
                seen.add((a, b))
                face.append(a)
                ring_b = rings[b]
                c = ring_b[(pos[b][a] - 1) % len(ring_b)]
                a, b = b, c
            faces.append(face)
    if not faces and rings:
        # isolated vertices: one unbounded face per connected component
        faces = [[u] for u in range(len(rings)) if not rings[u]][:1]
    return faces


def build_triangulation(P: PointSet, *, strict: bool = True) -> Triangulation:
    """L-infinity Delaunay triangulation of ``P`` (general position required)."""
    P.check_general_position()
    edges = frozenset(
        (u, v) for u, v in sorted(empty_rectangle_pairs(P))
        if is_linf_delaunay_edge(P, u, v, strict=strict)
    )
    return Triangulation(P, edges, build_rings(P, edges))
