"""Staged bounded-degree spanners: H8 (Step 2), H6 (Step 3) and H4 (Step 4)."""
from __future__ import annotations

from dataclasses import dataclass, field

from .anchors import AnchorTable, build_anchor_table
from .delaunay import Triangulation, build_triangulation
from .errors import (
    ChainCycleDetected,
    ChargeOverflow,
    ClassificationContradiction,
    DegreeOverflow,
    SpannerError,
)
from .geometry import PointSet
from .yao import YaoGraph, build_y4, ekey

Edge = tuple[int, int]


@dataclass(frozen=True)
class EdgePair:
    owner: int
    cone: int
    cutoff: int
    left: int
    right: int

    @property
    def wings(self) -> tuple[Edge, Edge]:
        return ekey(self.left, self.cutoff), ekey(self.cutoff, self.right)

    @property
    def shortcut(self) -> Edge:
        return ekey(self.left, self.right)


@dataclass(frozen=True)
class DuplicateChain:
    """Path w1..w_{k+1}; every edge but the last is a duplicate edge of the node after it."""

    nodes: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.nodes) - 1

    @property
    def end_edge(self) -> Edge:
        return ekey(self.nodes[-2], self.nodes[-1])

    @property
    def edges(self) -> list[Edge]:
        return [ekey(a, b) for a, b in zip(self.nodes, self.nodes[1:])]


@dataclass
class SpannerGraph:
    stage: str
    n: int
    edges: frozenset[Edge]
    shortcuts: frozenset[Edge] = frozenset()
    cutoffs: dict[int, int] = field(default_factory=dict)
    charges: dict[tuple[int, int], int] = field(default_factory=dict)
    attribution: dict[tuple[Edge, int], int] = field(default_factory=dict)

    @property
    def all_edges(self) -> frozenset[Edge]:
        return self.edges | self.shortcuts

    def __contains__(self, e) -> bool:
        return ekey(*e) in self.all_edges

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for a, b in self.all_edges:
            deg[a] += 1
            deg[b] += 1
        return deg

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def charge_vector(self, u: int) -> tuple[int, int, int, int]:
        return tuple(self.charges.get((u, i), 0) for i in range(4))


def is_nonanchor_uni_canonical(Y: YaoGraph, A: AnchorTable, a: int, b: int) -> bool:
    return Y.has_edge(a, b) and Y.is_canonical(a, b) and not Y.is_bidirectional(a, b) and not A.is_anchor(a, b)


def _step2_excluded(Y: YaoGraph, A: AnchorTable, u: int, end: int, nxt: int) -> bool:
    """Exclusion (a)/(b) for the canonical edge (nxt, end) at a fan end of ``u``."""
    return (
        Y.is_dual(end, u)
        and not A.is_start_of_odd_chain(end, u)
        and not A.is_anchor(nxt, end)
        and Y.has_arc(nxt, end)
        and not Y.has_arc(end, nxt)
    )


def charge_edges(Y: YaoGraph, A: AnchorTable, edges, shortcuts=()) -> tuple[dict, dict]:
    """Assign every edge to one cone at each endpoint; return (charges, attribution)."""
    P = Y.points
    charges: dict[tuple[int, int], int] = {}
    attribution: dict[tuple[Edge, int], int] = {}
    for e in edges:
        for x, y in (e, e[::-1]):
            if A.is_selected(x, y) or (Y.is_canonical(x, y) and Y.has_arc(x, y) and not Y.has_arc(y, x)):
                c = Y.cone(x, y)
            elif is_nonanchor_uni_canonical(Y, A, x, y) and Y.has_arc(y, x):
                (w,) = Y.canonical_owners[e]
                c = Y.cone(x, w)
            else:
                raise ClassificationContradiction(f"edge {e} has no charging rule at {x}")
            attribution[(e, x)] = c
            charges[(x, c)] = charges.get((x, c), 0) + 1
    for e in shortcuts:
        for x, y in (e, e[::-1]):
            c = P.cone(x, y)
            attribution[(e, x)] = c
            charges[(x, c)] = charges.get((x, c), 0) + 1
    return charges, attribution


def build_h8(Y: YaoGraph, A: AnchorTable, *, check: bool = True) -> SpannerGraph:
    """Step 2: selected anchors plus uni-directional canonical edges, minus (a)/(b)."""
    edges = set(A.selected_edges)
    for (u, i), m in Y.cone_members.items():
        k = len(m)
        if k < 2:
            continue
        for l in range(k - 1):
            a, b = m[l], m[l + 1]
            if not Y.is_unidirectional(a, b):
                continue
            if l == 0 and _step2_excluded(Y, A, u, m[0], m[1]):
                continue
            if l == k - 2 and _step2_excluded(Y, A, u, m[-1], m[-2]):
                continue
            edges.add(ekey(a, b))
    charges, attribution = charge_edges(Y, A, edges)
    H = SpannerGraph("H8", len(Y.points), frozenset(edges), charges=charges, attribution=attribution)
    if check:
        over = [k for k, c in charges.items() if c > 2]
        if over:
            raise ChargeOverflow(f"cones charged more than twice: {over}")
    return H


def duplicate_edges(H8: SpannerGraph, Y: YaoGraph, A: AnchorTable) -> dict[Edge, tuple[int, int]]:
    """Map duplicate edge (v2, v1) of u -> the next chain edge's orientation (v1, u)."""
    def nauc(a, b):
        return ekey(a, b) in H8.edges and is_nonanchor_uni_canonical(Y, A, a, b)

    dup: dict[Edge, tuple[int, int]] = {}
    for (u, i), m in Y.cone_members.items():
        if len(m) < 2:
            continue
        for end, nxt in ((m[0], m[1]), (m[-1], m[-2])):
            if nauc(end, u) and Y.has_arc(end, u) and nauc(nxt, end) and Y.has_arc(nxt, end):
                e = ekey(nxt, end)
                if e in dup and dup[e] != (end, u):
                    raise ClassificationContradiction(f"edge {e} is a duplicate edge of two nodes")
                dup[e] = (end, u)
    return dup


def duplicate_chains(H8: SpannerGraph, Y: YaoGraph, A: AnchorTable) -> list[DuplicateChain]:
    """Partition the non-anchor uni-directional canonical edges of H8 into chains."""
    pool = {e for e in H8.edges if is_nonanchor_uni_canonical(Y, A, *e)}
    dup = duplicate_edges(H8, Y, A)
    succ = {e: ekey(*t) for e, t in dup.items()}
    has_pred = set(succ.values())
    chains = []
    used: set[Edge] = set()
    for e in sorted(pool):
        if e in has_pred:
            continue
        nodes: list[int]
        if e in dup:
            shared, _ = dup[e]
            nodes = [e[0] if e[1] == shared else e[1], shared]
        else:
            nodes = list(e)
        cur = e
        while True:
            if cur in used:
                raise ChainCycleDetected(f"duplicate edge {cur} reached twice")
            used.add(cur)
            if cur not in dup:
                break
            nodes.append(dup[cur][1])
            cur = succ[cur]
        chains.append(DuplicateChain(tuple(nodes)))
    if used != pool:
        raise ChainCycleDetected(f"{len(pool - used)} duplicate edges lie on a cycle")
    return chains


def build_h6(H8: SpannerGraph, chains: list[DuplicateChain], Y: YaoGraph, A: AnchorTable) -> SpannerGraph:
    """Step 3: drop every other chain edge, starting next to the end edge."""
    removed = set()
    for ch in chains:
        w = ch.nodes
        for j in range(ch.k - 1, 0, -2):
            removed.add(ekey(w[j - 1], w[j]))
    edges = H8.edges - removed
    charges, attribution = charge_edges(Y, A, edges)
    return SpannerGraph("H6", H8.n, frozenset(edges), charges=charges, attribution=attribution)


def find_edge_pairs(H: SpannerGraph, Y: YaoGraph, A: AnchorTable) -> list[EdgePair]:
    pairs = []
    for (u, i), m in sorted(Y.cone_members.items()):
        for r in range(1, len(m) - 1):
            vr = m[r]
            if ekey(u, vr) in H.edges:
                continue
            wings_ok = all(
                ekey(w, vr) in H.edges and is_nonanchor_uni_canonical(Y, A, w, vr) and Y.has_arc(w, vr)
                for w in (m[r - 1], m[r + 1])
            )
            if wings_ok:
                pairs.append(EdgePair(u, i, vr, m[r - 1], m[r + 1]))
    return pairs


def build_h4(H6: SpannerGraph, pairs: list[EdgePair], Y: YaoGraph, A: AnchorTable, *, check: bool = True) -> SpannerGraph:
    """Step 4: replace each edge pair by a straight shortcut between its wing ends."""
    removed = set()
    shortcuts = set()
    cutoffs = {}
    for p in pairs:
        removed.update(p.wings)
        shortcuts.add(p.shortcut)
        cutoffs[p.cutoff] = p.owner
    edges = H6.edges - removed
    charges, attribution = charge_edges(Y, A, edges, shortcuts)
    H4 = SpannerGraph("H4", H6.n, frozenset(edges), frozenset(shortcuts), cutoffs, charges, attribution)
    if check:
        if H4.max_degree() > 4:
            raise DegreeOverflow(f"H4 has maximum degree {H4.max_degree()}")
        from .verify import check_planarity

        ok, witness = check_planarity(Y.points, H4.all_edges)
        if not ok:
            from .errors import PlanarityViolation

            raise PlanarityViolation(f"H4 edges cross: {witness}")
    return H4


@dataclass
class Construction:
    """Every intermediate object of the pipeline for one point set."""

    points: PointSet
    T: Triangulation
    Y: YaoGraph
    A: AnchorTable
    H8: SpannerGraph
    chains: list[DuplicateChain]
    H6: SpannerGraph
    pairs: list[EdgePair]
    H4: SpannerGraph

    def stage(self, name: str):
        name = name.lower()
        if name in ("delaunay", "t"):
            return self.T.edges
        if name == "y4":
            return self.Y.edges
        return {"h8": self.H8, "h6": self.H6, "h4": self.H4}[name]


def construct(P: PointSet, *, check: bool = True) -> Construction:
    """Run the whole pipeline: T, Y4, anchors, H8, H6, H4."""
    stage = "delaunay"
    try:
        T = build_triangulation(P)
        stage = "y4"
        Y = build_y4(P, T)
        stage = "anchors"
        A = build_anchor_table(Y)
        stage = "h8"
        H8 = build_h8(Y, A, check=check)
        stage = "h6"
        chains = duplicate_chains(H8, Y, A)
        H6 = build_h6(H8, chains, Y, A)
        stage = "h4"
        pairs = find_edge_pairs(H6, Y, A)
        H4 = build_h4(H6, pairs, Y, A, check=check)
    except SpannerError as exc:
        if exc.stage is None:
            exc.stage = stage
        raise
    return Construction(P, T, Y, A, H8, chains, H6, pairs, H4)
