"""Directed four-cone Yao graph under the L-infinity length, as an overlay on T."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .delaunay import Triangulation
from .errors import ClassificationContradiction
from .geometry import Metric, PointSet, ccw_key, cone_of


def ekey(u: int, v: int) -> tuple[int, int]:
    """Canonical key of an undirected edge."""
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Fan:
    """CCW-ordered Y4 neighbours (two or more) of ``owner`` inside one cone."""

    owner: int
    cone: int
    members: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.members)

    @cached_property
    def position(self) -> dict[int, int]:
        return {w: k for k, w in enumerate(self.members)}

    @property
    def first(self) -> int:
        return self.members[0]

    @property
    def last(self) -> int:
        return self.members[-1]


@dataclass(frozen=True)
class YaoGraph:
    points: PointSet
    triangulation: Triangulation
    out: dict[tuple[int, int], int]
    cone_members: dict[tuple[int, int], tuple[int, ...]] = field(repr=False)

    @cached_property
    def directed(self) -> frozenset[tuple[int, int]]:
        return frozenset((v, w) for (v, _), w in self.out.items())

    @cached_property
    def edges(self) -> frozenset[tuple[int, int]]:
        return frozenset(ekey(v, w) for v, w in self.directed)

    def has_arc(self, v: int, w: int) -> bool:
        """True iff v -> w was chosen in Step 1."""
        return (v, w) in self.directed

    def has_edge(self, u: int, v: int) -> bool:
        return ekey(u, v) in self.edges

    def is_bidirectional(self, u: int, v: int) -> bool:
        return self.has_arc(u, v) and self.has_arc(v, u)

    def is_unidirectional(self, u: int, v: int) -> bool:
        return self.has_edge(u, v) and not self.is_bidirectional(u, v)

    def members(self, u: int, i: int) -> tuple[int, ...]:
        return self.cone_members.get((u, i % 4), ())

    def in_edges(self, u: int, i: int) -> set[int]:
        return {w for w in self.members(u, i) if self.has_arc(w, u)}

    def cone(self, u: int, v: int) -> int:
        return cone_of(self.points[u], self.points[v])

    def fan(self, u: int, i: int) -> Fan | None:
        m = self.members(u, i)
        return Fan(u, i % 4, m) if len(m) >= 2 else None

    def is_mutually_single(self, u: int, v: int) -> bool:
        i = self.cone(u, v)
        return len(self.members(u, i)) == 1 and len(self.members(v, i + 2)) == 1

    def is_dual(self, u: int, v: int) -> bool:
        i = self.cone(u, v)
        return len(self.members(u, i)) >= 2 and len(self.members(v, i + 2)) >= 2

    @cached_property
    def canonical_owners(self) -> dict[tuple[int, int], frozenset[int]]:
        """Map canonical edge -> nodes it is canonical for."""
        owners: dict[tuple[int, int], set[int]] = {}
        for (u, _), m in self.cone_members.items():
            for a, b in zip(m, m[1:]):
                owners.setdefault(ekey(a, b), set()).add(u)
        return {e: frozenset(s) for e, s in owners.items()}

    def is_canonical(self, u: int, v: int) -> bool:
        return ekey(u, v) in self.canonical_owners


def build_y4(P: PointSet, T: Triangulation) -> YaoGraph:
    """Step 1: per node and non-empty cone, the L-infinity nearest T-neighbour.

    Ties go to the smallest node id.  The nearest site of a cone always sits
    on the boundary of the empty square S_v^i, so it is a T-neighbour.
    """
    out: dict[tuple[int, int], int] = {}
    for v in range(len(P)):
        best: dict[int, tuple[int, int]] = {}
        for w in T.neighbors(v):
            i = cone_of(P[v], P[w])
            cand = (P.dist(Metric.LINF, v, w), w)
            if i not in best or cand < best[i]:
                best[i] = cand
        for i, (_, w) in best.items():
            out[(v, i)] = w
    nbrs: dict[tuple[int, int], list[int]] = {}
    for (v, _), w in out.items():
        for a, b in ((v, w), (w, v)):
            lst = nbrs.setdefault((a, cone_of(P[a], P[b])), [])
            if b not in lst:
                lst.append(b)
    members = {}
    for (u, i), lst in nbrs.items():
        key = ccw_key(P[u])
        members[(u, i)] = tuple(sorted(lst, key=lambda w: key(P[w])))
    return YaoGraph(P, T, out, members)


def fan(Y: YaoGraph, u: int, i: int) -> Fan | None:
    return Y.fan(u, i)


@dataclass
class EdgeClass:
    edge: tuple[int, int]
    bidirectional: bool
    mutually_single: bool
    dual: bool
    middle: bool
    canonical_for: frozenset[int]
    first_in: frozenset[int]
    last_in: frozenset[int]

    @property
    def canonical(self) -> bool:
        return bool(self.canonical_for)


def classify_edges(Y: YaoGraph) -> dict[tuple[int, int], EdgeClass]:
    table = {}
    for e in sorted(Y.edges):
        u, v = e
        middle = False
        first, last = set(), set()
        for a, b in ((u, v), (v, u)):
            f = Y.fan(a, Y.cone(a, b))
            if f is None:
                continue
            pos = f.position[b]
            if pos == 0:
                first.add(a)
            elif pos == len(f) - 1:
                last.add(a)
            else:
                middle = True
        cls = EdgeClass(
            edge=e,
            bidirectional=Y.is_bidirectional(u, v),
            mutually_single=Y.is_mutually_single(u, v),
            dual=Y.is_dual(u, v),
            middle=middle,
            canonical_for=Y.canonical_owners.get(e, frozenset()),
            first_in=frozenset(first),
            last_in=frozenset(last),
        )
        if cls.mutually_single and not cls.bidirectional:
            raise ClassificationContradiction(f"mutually-single edge {e} is not bi-directional")
        if cls.middle + cls.dual + cls.canonical > 1:
            raise ClassificationContradiction(f"edge {e} is in more than one of middle/dual/canonical")
        table[e] = cls
    return table
