"""Anchors, weak anchor chains, anchor selection and standard paths."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .errors import AnchorUndefined, ChainCycleDetected, PositionOutOfRange
from .yao import YaoGraph, ekey


@dataclass(frozen=True)
class CanonicalPath:
    owner: int
    cone: int
    nodes: tuple[int, ...]


@dataclass
class Anchor:
    owner: int
    cone: int
    target: int
    strong: bool = True
    selected: bool = False
    start_of_odd_chain: bool = False

    @property
    def edge(self) -> tuple[int, int]:
        return ekey(self.owner, self.target)


@dataclass(frozen=True)
class WeakAnchorChain:
    """Nodes w0..wk joined by weak anchors chosen alternately in cones i and i + 2."""

    nodes: tuple[int, ...]
    cone: int

    @property
    def k(self) -> int:
        return len(self.nodes) - 1


@dataclass(frozen=True)
class StandardPath:
    source: int
    target: int
    level: int
    nodes: tuple[int, ...]
    host: str = "Y4"

    def length(self, P) -> float:
        return sum(P.d2(a, b) for a, b in zip(self.nodes, self.nodes[1:]))

    @property
    def is_simple(self) -> bool:
        return len(set(self.nodes)) == len(self.nodes)


@dataclass
class AnchorTable:
    Y: YaoGraph
    anchors: dict[tuple[int, int], Anchor]
    chains: list[WeakAnchorChain] = field(default_factory=list)

    def get(self, u: int, i: int) -> Anchor | None:
        return self.anchors.get((u, i % 4))

    def target(self, u: int, i: int) -> int | None:
        a = self.get(u, i)
        return None if a is None else a.target

    @cached_property
    def by_edge(self) -> dict[tuple[int, int], list[Anchor]]:
        d: dict[tuple[int, int], list[Anchor]] = {}
        for a in self.anchors.values():
            d.setdefault(a.edge, []).append(a)
        return d

    def is_anchor(self, u: int, v: int) -> bool:
        return ekey(u, v) in self.by_edge

    def is_selected(self, u: int, v: int) -> bool:
        return any(a.selected for a in self.by_edge.get(ekey(u, v), ()))

    @cached_property
    def selected_edges(self) -> frozenset[tuple[int, int]]:
        return frozenset(a.edge for a in self.anchors.values() if a.selected)

    def is_start_of_odd_chain(self, u: int, v: int) -> bool:
        """True iff (u, v) is a start-of-odd-chain anchor chosen by ``u``."""
        a = self.get(u, self.Y.cone(u, v))
        return a is not None and a.target == v and a.start_of_odd_chain

    def incident_selected(self, u: int, i: int) -> list[tuple[int, int]]:
        """Selected anchors with an endpoint ``u`` lying in cone ``i`` of ``u``."""
        out = []
        for w in self.Y.members(u, i):
            if self.is_selected(u, w):
                out.append(ekey(u, w))
        return out


def _fan_or_raise(Y: YaoGraph, u: int, i: int):
    f = Y.fan(u, i)
    if f is None:
        raise PositionOutOfRange(f"node {u} has no fan in cone {i % 4}")
    return f


def canonical_path(Y: YaoGraph, u: int, i: int, s: int, r: int) -> CanonicalPath:
    """Fan sub-path of ``u`` in cone ``i`` between positions ``s`` and ``r`` (0-based)."""
    f = _fan_or_raise(Y, u, i)
    k = len(f)
    if not (0 <= s < k and 0 <= r < k):
        raise PositionOutOfRange(f"positions {s}, {r} outside fan of size {k}")
    step = 1 if r >= s else -1
    return CanonicalPath(u, i % 4, tuple(f.members[s : r + step if r + step >= 0 else None : step]))


def canonical_path_between(Y: YaoGraph, u: int, i: int, a: int, b: int) -> tuple[int, ...]:
    """Node-addressed C_u(a, b); a single node when a == b, even without a fan."""
    if a == b:
        return (a,)
    f = _fan_or_raise(Y, u, i)
    return canonical_path(Y, u, i, f.position[a], f.position[b]).nodes


def maximal_unidir_canonical_path_ending_at(
    Y: YaoGraph, u: int, i: int, l: int, direction: int | None = None
) -> CanonicalPath:
    """Longest directed run of uni-directional canonical edges flowing into v_l.

    ``direction`` -1 extends towards lower fan positions, +1 towards higher;
    None picks whichever side yields the longer path (lower side on ties).
    """
    f = _fan_or_raise(Y, u, i)
    if not 0 <= l < len(f):
        raise PositionOutOfRange(f"position {l} outside fan of size {len(f)}")
    m = f.members

    def extend(step: int) -> int:
        s = l
        while 0 <= s + step < len(m):
            a, b = m[s + step], m[s]
            if Y.has_arc(a, b) and not Y.has_arc(b, a):
                s += step
            else:
                break
        return s

    if direction is None:
        lo, hi = extend(-1), extend(+1)
        s = lo if l - lo >= hi - l else hi
    else:
        s = extend(direction)
    return canonical_path(Y, u, i, s, l)


def choose_anchor(Y: YaoGraph, u: int, i: int) -> int | None:
    """Target of the anchor chosen by ``u`` in cone ``i``, or None when undefined."""
    members = Y.members(u, i)
    if not members:
        return None
    if len(members) == 1:
        v = members[0]
        return v if Y.is_mutually_single(u, v) else None
    out = Y.out[(u, i % 4)]
    l = members.index(out)
    k = len(members)

    def uni(a: int, b: int) -> bool:
        return Y.has_arc(a, b) and not Y.has_arc(b, a)

    if l >= 1 and uni(members[l - 1], members[l]):
        return maximal_unidir_canonical_path_ending_at(Y, u, i, l, -1).nodes[0]
    if l <= k - 2 and uni(members[l + 1], members[l]):
        return maximal_unidir_canonical_path_ending_at(Y, u, i, l, +1).nodes[0]
    return out


def choose_anchors(Y: YaoGraph) -> AnchorTable:
    anchors = {}
    for (u, i) in sorted(Y.cone_members):
        t = choose_anchor(Y, u, i)
        if t is not None:
            anchors[(u, i)] = Anchor(u, i, t)
    return AnchorTable(Y, anchors)


def classify_anchor_strength(A: AnchorTable) -> AnchorTable:
    for a in A.anchors.values():
        back = A.get(a.target, a.cone + 2)
        a.strong = back is None or back.target == a.owner
    return A


def _next_anchor(A: AnchorTable, a: Anchor) -> Anchor:
    return A.anchors[(a.target, (a.cone + 2) % 4)]


def weak_anchor_chains(A: AnchorTable) -> list[WeakAnchorChain]:
    """Partition weak anchors into maximal alternating chains."""
    weak = [a for a in A.anchors.values() if not a.strong]
    has_pred = set()
    for a in weak:
        b = _next_anchor(A, a)
        if not b.strong:
            has_pred.add((b.owner, b.cone))
    chains = []
    visited = set()
    for a in sorted(weak, key=lambda a: (a.owner, a.cone)):
        if (a.owner, a.cone) in has_pred:
            continue
        nodes = [a.owner]
        cur = a
        while not cur.strong:
            if (cur.owner, cur.cone) in visited:
                raise ChainCycleDetected(f"weak anchor of node {cur.owner} reached twice")
            visited.add((cur.owner, cur.cone))
            nodes.append(cur.target)
            cur = _next_anchor(A, cur)
        chains.append(WeakAnchorChain(tuple(nodes), a.cone))
    if len(visited) != len(weak):
        raise ChainCycleDetected("weak anchors form a cycle")
    A.chains = chains
    return chains


def select_anchors(A: AnchorTable, chains: list[WeakAnchorChain] | None = None) -> AnchorTable:
    if chains is None:
        chains = A.chains
    for a in A.anchors.values():
        a.selected = a.strong
        a.start_of_odd_chain = False
    for ch in chains:
        w, k = ch.nodes, ch.k
        for l in range(k - 1, 0, -2):
            A.get(w[l - 1], A.Y.cone(w[l - 1], w[l])).selected = True
        if k % 2 == 1:
            A.get(w[0], ch.cone).start_of_odd_chain = True
    A.__dict__.pop("selected_edges", None)
    return A


def build_anchor_table(Y: YaoGraph) -> AnchorTable:
    A = classify_anchor_strength(choose_anchors(Y))
    select_anchors(A, weak_anchor_chains(A))
    return A


def standard_path_1(Y: YaoGraph, A: AnchorTable, u: int, v: int) -> StandardPath:
    i = Y.cone(u, v)
    a = A.get(u, i)
    if a is None:
        raise AnchorUndefined(f"node {u} chose no anchor in cone {i}")
    nodes = (u,) + canonical_path_between(Y, u, i, a.target, v)
    return StandardPath(u, v, 1, nodes)


def standard_path_2(Y: YaoGraph, A: AnchorTable, u: int, v: int) -> StandardPath:
    i = Y.cone(u, v)
    a = A.get(u, i)
    if a is None:
        raise AnchorUndefined(f"node {u} chose no anchor in cone {i}")
    if a.selected:
        return StandardPath(u, v, 2, standard_path_1(Y, A, u, v).nodes)
    back = standard_path_1(Y, A, a.target, u).nodes[::-1]
    nodes = back + canonical_path_between(Y, u, i, a.target, v)[1:]
    return StandardPath(u, v, 2, nodes)


@dataclass
class PrePath:
    """Edge multiset of a 2d-standard pre-path plus the assembled walk, if it connects."""

    source: int
    target: int
    level: int
    edges: list[tuple[int, int]]
    walk: tuple[int, ...] | None

    @property
    def is_path(self) -> bool:
        return self.walk is not None

    def as_standard_path(self, host: str = "") -> StandardPath:
        from .errors import NotAPath

        if self.walk is None:
            raise NotAPath(f"pre-path {self.source}->{self.target} does not connect")
        return StandardPath(self.source, self.target, 2 * self.level, self.walk, host)


def anchor_side(Y: YaoGraph, A: AnchorTable, w: int, x: int) -> tuple[int, int]:
    """Orientation (from, to) of edge (w, x) whose source has an anchor in that cone."""
    if A.get(w, Y.cone(w, x)) is not None:
        return w, x
    return x, w


class PrePathBuilder:
    """Memoised 2d-standard pre-paths inside a host edge set ``H``."""

    def __init__(self, Y: YaoGraph, A: AnchorTable, host_edges, host: str = ""):
        self.Y = Y
        self.A = A
        self.H = host_edges
        self.host = host
        self._memo: dict[tuple[int, int, int], PrePath] = {}

    def __call__(self, u: int, v: int, d: int) -> PrePath:
        key = (u, v, d)
        if key not in self._memo:
            self._memo[key] = self._build(u, v, d)
        return self._memo[key]

    def _build(self, u: int, v: int, d: int) -> PrePath:
        p = standard_path_2(self.Y, self.A, u, v).nodes
        edges: list[tuple[int, int]] = []
        walk: list[int] | None = [u]
        for a, b in zip(p, p[1:]):
            if ekey(a, b) in self.H:
                edges.append(ekey(a, b))
                if walk is not None:
                    walk.append(b)
                continue
            if d > 1 and self.Y.is_canonical(a, b):
                s, t = anchor_side(self.Y, self.A, a, b)
                sub = self(s, t, d - 1)
                edges.extend(sub.edges)
                if walk is not None and sub.walk is not None:
                    seg = sub.walk if s == a else sub.walk[::-1]
                    walk.extend(seg[1:])
                    continue
            walk = None
        return PrePath(u, v, d, edges, tuple(walk) if walk is not None else None)


def standard_prepath(Y: YaoGraph, A: AnchorTable, H, u: int, v: int, d: int) -> PrePath:
    """The 2d-standard pre-path in ``H`` (an edge-key set) from ``u`` to ``v``."""
    return PrePathBuilder(Y, A, H)(u, v, d)
