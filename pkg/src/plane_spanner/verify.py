"""Independent certification: planarity, degrees, charges, path bounds, stretch."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .anchors import PrePathBuilder, anchor_side
from .errors import DisconnectedGraph, SpannerError
from .geometry import PointSet
from .yao import ekey

SQRT2 = math.sqrt(2.0)
YAO_BOUND = 1.0 + SQRT2
ONE_STANDARD_BOUND = 3.0 + SQRT2
SIX_STANDARD_BOUND = (3.0 + SQRT2) ** 6
CUTOFF_BOUND = (1.0 + SQRT2) * SIX_STANDARD_BOUND
DELAUNAY_STRETCH = math.sqrt(4.0 + 2.0 * SQRT2)
H4_STRETCH_BOUND = DELAUNAY_STRETCH * (1.0 + SQRT2) ** 2 * SIX_STANDARD_BOUND
EMPIRICAL_STRETCH = 10.0
RTOL = 1e-9


def within(value: float, bound: float, rtol: float = RTOL) -> bool:
    return value <= bound * (1.0 + rtol)


def check_planarity(P: PointSet, edges) -> tuple[bool, tuple | None]:
    """Exact test that no two segments cross and no segment runs through a third site.

    Returns (True, None) or (False, witness) where the witness is
    ("cross", e, f) or ("through", e, site).
    """
    E = sorted({ekey(*e) for e in edges})
    if not E:
        return True, None
    xs, ys = P.xs, P.ys
    a = np.array([e[0] for e in E])
    b = np.array([e[1] for e in E])
    ax, ay, bx, by = xs[a], ys[a], xs[b], ys[b]

    # sites lying on a segment (other than its endpoints)
    for k in range(len(E)):
        cr = (bx[k] - ax[k]) * (ys - ay[k]) - (by[k] - ay[k]) * (xs - ax[k])
        on = (cr == 0) & (xs >= min(ax[k], bx[k])) & (xs <= max(ax[k], bx[k])) \
            & (ys >= min(ay[k], by[k])) & (ys <= max(ay[k], by[k]))
        on[[a[k], b[k]]] = False
        if on.any():
            return False, ("through", E[k], int(np.flatnonzero(on)[0]))

    def orient(px, py, qx, qy, rx, ry):
        return np.sign((qx - px) * (ry - py) - (qy - py) * (rx - px))

    for k in range(len(E) - 1):
        j = np.arange(k + 1, len(E))
        shared = (a[j] == a[k]) | (a[j] == b[k]) | (b[j] == a[k]) | (b[j] == b[k])
        o1 = orient(ax[k], ay[k], bx[k], by[k], ax[j], ay[j])
        o2 = orient(ax[k], ay[k], bx[k], by[k], bx[j], by[j])
        o3 = orient(ax[j], ay[j], bx[j], by[j], ax[k], ay[k])
        o4 = orient(ax[j], ay[j], bx[j], by[j], bx[k], by[k])
        cross = (o1 * o2 < 0) & (o3 * o4 < 0) & ~shared
        if cross.any():
            return False, ("cross", E[k], E[int(j[np.flatnonzero(cross)[0]])])
    return True, None


def segments_cross(P: PointSet, e, f) -> bool:
    """Proper crossing of two segments with no shared endpoint."""
    from .geometry import orient

    if set(e) & set(f):
        return False
    p, q = P[e[0]], P[e[1]]
    r, s = P[f[0]], P[f[1]]
    return orient(p, q, r) * orient(p, q, s) < 0 and orient(r, s, p) * orient(r, s, q) < 0


def _weight_matrix(P: PointSet, edges) -> csr_matrix:
    n = len(P)
    E = list(edges)
    if not E:
        return csr_matrix((n, n))
    rows = [a for a, _ in E] + [b for _, b in E]
    cols = [b for _, b in E] + [a for a, _ in E]
    w = [P.d2(a, b) for a, b in E] * 2
    return csr_matrix((w, (rows, cols)), shape=(n, n))


def all_pairs_distances(P: PointSet, edges) -> np.ndarray:
    """Shortest path lengths with Euclidean edge weights (Dijkstra from every node)."""
    if len(P) == 0:
        return np.zeros((0, 0))
    return shortest_path(_weight_matrix(P, edges), method="D", directed=False)


def euclidean_matrix(P: PointSet) -> np.ndarray:
    dx = P.xs[:, None] - P.xs[None, :]
    dy = P.ys[:, None] - P.ys[None, :]
    return np.sqrt((dx * dx + dy * dy).astype(float))


@dataclass
class StretchReport:
    graph: str
    max_ratio: float
    argmax: tuple[int, int] | None
    violations: list[tuple[int, int, float]] = field(default_factory=list)

    @property
    def finite(self) -> bool:
        return math.isfinite(self.max_ratio)


def stretch_factor(G, P: PointSet, *, tag: str = "", bound: float | None = None) -> StretchReport:
    """Maximum over all pairs of graph distance / Euclidean distance."""
    edges = G.all_edges if hasattr(G, "all_edges") else G
    tag = tag or getattr(G, "stage", "")
    n = len(P)
    if n < 2:
        return StretchReport(tag, 1.0, None)
    dist = all_pairs_distances(P, edges)
    if not np.isfinite(dist).all():
        raise DisconnectedGraph(f"graph {tag or '?'} is not connected")
    eu = euclidean_matrix(P)
    iu = np.triu_indices(n, 1)
    ratio = dist[iu] / eu[iu]
    k = int(np.argmax(ratio))
    report = StretchReport(tag, float(ratio[k]), (int(iu[0][k]), int(iu[1][k])))
    if bound is not None:
        bad = np.flatnonzero(ratio > bound * (1 + RTOL))
        report.violations = [(int(iu[0][j]), int(iu[1][j]), float(ratio[j])) for j in bad]
    return report


def verify_yao_vs_t(Y, T) -> list[tuple[int, int, float]]:
    """T edges whose shortest Y4 path exceeds (1 + sqrt 2) times their length."""
    P = Y.points
    dist = all_pairs_distances(P, Y.edges)
    bad = []
    for u, v in sorted(T.edges):
        r = dist[u, v] / P.d2(u, v)
        if not within(r, YAO_BOUND):
            bad.append((u, v, float(r)))
    return bad


def verify_one_standard_paths(Y, A) -> list[tuple]:
    """Check the three length bounds on every 1-standard path of every Y4 edge."""
    from .anchors import canonical_path_between

    P = Y.points
    bad = []
    for u, v in sorted(Y.edges):
        for s, t in ((u, v), (v, u)):
            i = Y.cone(s, t)
            a = A.get(s, i)
            if a is None:
                continue
            base = P.d2(s, t)
            if not within(P.d2(s, a.target), 2 * base):
                bad.append(("anchor", s, t))
            seg = canonical_path_between(Y, s, i, t, a.target)
            lens = [P.d2(x, y) for x, y in zip(seg, seg[1:])]
            if any(not within(L, SQRT2 * base) for L in lens):
                bad.append(("edge", s, t))
            if not within(sum(lens), YAO_BOUND * base):
                bad.append(("canonical", s, t))
            if not within(P.d2(s, a.target) + sum(lens), ONE_STANDARD_BOUND * base):
                bad.append(("total", s, t))
    return bad


def _endpoint_orders(Y, A, u: int, v: int):
    for s, t in ((u, v), (v, u)):
        if A.get(s, Y.cone(s, t)) is not None:
            yield s, t


def standard_walks(Y, A, stage, d: int = 3) -> dict[tuple[int, int], tuple[int, ...] | None]:
    """For each Y4 edge, the first 2d-standard pre-path in ``stage`` that connects."""
    build = PrePathBuilder(Y, A, stage.all_edges, stage.stage)
    out = {}
    for u, v in sorted(Y.edges):
        walk = None
        for s, t in _endpoint_orders(Y, A, u, v):
            pp = build(s, t, d)
            if pp.walk is not None:
                walk = pp.walk
                break
        out[(u, v)] = walk
    return out


def _walk_length(P, walk) -> float:
    return sum(P.d2(a, b) for a, b in zip(walk, walk[1:]))


def _to_h4(walk, H4, wing_of):
    """Replace consecutive wing pairs by their shortcut; None if a lone wing remains."""
    out = [walk[0]]
    k = 1
    while k < len(walk):
        a, b = out[-1], walk[k]
        if ekey(a, b) in H4.all_edges:
            out.append(b)
            k += 1
            continue
        p = wing_of.get(ekey(a, b))
        if p is not None and k + 1 < len(walk) and b == p.cutoff and ekey(b, walk[k + 1]) in p.wings:
            out.append(walk[k + 1])
            k += 2
            continue
        return None
    return tuple(out)


def verify_standard_path_bounds(C, stage_name: str) -> list[tuple]:
    """Every Y4 edge has a short standard path in the stage (H8, H6) or the H4 detour.

    Returns a list of (u, v, reason) violations.
    """
    Y, A, P = C.Y, C.A, C.points
    bad = []
    if stage_name in ("H8", "H6"):
        stage = C.H8 if stage_name == "H8" else C.H6
        for (u, v), walk in standard_walks(Y, A, stage).items():
            if walk is None:
                bad.append((u, v, "no 6-standard path"))
            elif not within(_walk_length(P, walk), SIX_STANDARD_BOUND * P.d2(u, v)):
                bad.append((u, v, "too long"))
        return bad

    H4 = C.H4
    walks6 = standard_walks(Y, A, C.H6)
    wing_of = {w: p for p in C.pairs for w in p.wings}

    def h4_walk(s, t):
        w = walks6.get(ekey(s, t))
        if w is None:
            return None
        w = w if w[0] == s else w[::-1]
        return _to_h4(w, H4, wing_of)

    cut_pairs = {(p.owner, p.cutoff): p for p in C.pairs}
    for u, v in sorted(Y.edges):
        walk = h4_walk(u, v)
        bound = SIX_STANDARD_BOUND
        if walk is None:
            p = cut_pairs.get((u, v)) or cut_pairs.get((v, u))
            if p is None:
                bad.append((u, v, "lone wing outside a cut-off path"))
                continue
            best = None
            for wing in (p.left, p.right):
                first = h4_walk(p.owner, wing)
                second = h4_walk(wing, p.cutoff)
                if first is not None and second is not None:
                    L = _walk_length(P, first) + _walk_length(P, second)
                    best = L if best is None else min(best, L)
            if best is None:
                bad.append((u, v, "no detour to cut-off node"))
                continue
            length = best
            bound = CUTOFF_BOUND
        else:
            length = _walk_length(P, walk)
        if not within(length, bound * P.d2(u, v)):
            bad.append((u, v, "too long"))
    return bad


def charge2_cases(C) -> list[tuple[int, int, str]]:
    """Cones charged twice in H8, each matched to case a/b/c, or '?' when none fits."""
    from .spanner import is_nonanchor_uni_canonical

    Y, A, H8 = C.Y, C.A, C.H8

    def nauc_in(a, b):
        return ekey(a, b) in H8.edges and is_nonanchor_uni_canonical(Y, A, a, b) and Y.has_arc(a, b)

    found = []
    for (x, c), q in sorted(H8.charges.items()):
        if q != 2:
            continue
        label = "?"
        for u in Y.members(x, c):
            m = Y.members(u, c + 2)
            if len(m) < 2 or x not in m:
                continue
            r = m.index(x)
            k = len(m)
            if 0 < r < k - 1 and ekey(u, x) not in H8.edges and nauc_in(m[r - 1], x) and nauc_in(m[r + 1], x):
                label = "a"
            elif r == 0 and nauc_in(x, u) and nauc_in(m[1], x):
                label = "b"
            elif r == k - 1 and nauc_in(x, u) and nauc_in(m[-2], x):
                label = "c"
            if label != "?":
                break
        found.append((x, c, label))
    return found


def shortcut_crossings(C) -> list[tuple]:
    """For every shortcut, the Y4 and H4 edges it properly crosses (must be only (u, v_r))."""
    P = C.points
    bad = []
    for p in C.pairs:
        s = p.shortcut
        allowed = ekey(p.owner, p.cutoff)
        for e in C.Y.edges | C.H4.shortcuts:
            if e != s and e != allowed and segments_cross(P, s, e):
                bad.append((s, e))
        if ekey(p.owner, p.cutoff) in C.H4.all_edges:
            bad.append((s, allowed))
    return bad


@dataclass
class Certificate:
    n: int
    planarity: dict[str, bool] = field(default_factory=dict)
    crossing_witness: dict[str, tuple | None] = field(default_factory=dict)
    degree_histogram: dict[str, dict[int, int]] = field(default_factory=dict)
    max_charge: dict[str, int] = field(default_factory=dict)
    stretch: dict[str, float] = field(default_factory=dict)
    checks: list[tuple[str, bool, str]] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.error is None and all(ok for _, ok, _ in self.checks)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append((name, bool(ok), detail))

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "passed": self.passed,
            "error": self.error,
            "planarity": self.planarity,
            "crossing_witness": {k: _jsonable(v) for k, v in self.crossing_witness.items()},
            "degree_histogram": {k: {str(d): c for d, c in sorted(h.items())} for k, h in self.degree_histogram.items()},
            "max_charge": self.max_charge,
            "stretch": self.stretch,
            "checks": [{"name": n, "ok": ok, "detail": d} for n, ok, d in self.checks],
            "warnings": self.warnings,
        }


def _jsonable(x):
    if isinstance(x, tuple):
        return [_jsonable(y) for y in x]
    return x


def _histogram(degrees) -> dict[int, int]:
    h: dict[int, int] = {}
    for d in degrees:
        h[d] = h.get(d, 0) + 1
    return h


def full_certificate(P, *, stretch: bool = True) -> Certificate:
    """Run the pipeline on ``P`` and every check; failures are recorded, not raised."""
    from .geometry import PointSet
    from .spanner import construct

    n = len(P) if P is not None else 0
    cert = Certificate(n)
    try:
        if not isinstance(P, PointSet):
            P = PointSet(P)
        C = construct(P, check=False)
    except SpannerError as exc:
        cert.error = f"{type(exc).__name__}: {exc}"
        return cert
    certify_construction(C, cert, stretch=stretch)
    return cert


def certify_construction(C, cert: Certificate | None = None, *, stretch: bool = True) -> Certificate:
    from .delaunay import extract_faces

    P = C.points
    cert = cert or Certificate(len(P))
    graphs = {"T": C.T.edges, "Y4": C.Y.edges, "H8": C.H8.all_edges, "H6": C.H6.all_edges, "H4": C.H4.all_edges}
    for name, edges in graphs.items():
        ok, wit = check_planarity(P, edges)
        cert.planarity[name] = ok
        cert.crossing_witness[name] = wit
        cert.add(f"{name} plane", ok, "" if ok else str(wit))
    for name, G in (("H8", C.H8), ("H6", C.H6), ("H4", C.H4)):
        cert.degree_histogram[name] = _histogram(G.degrees())
        cert.max_charge[name] = max(G.charges.values(), default=0)
    cert.add("Y4 subset of T", C.Y.edges <= C.T.edges)
    cert.add("T Euler formula", euler_ok(C.T))
    tri_ok, tri_msg = triangulation_faces_ok(C.T)
    cert.add("T faces", tri_ok, tri_msg)
    cert.add("H8 max degree <= 8", C.H8.max_degree() <= 8, str(C.H8.max_degree()))
    cert.add("H8 cone charge <= 2", cert.max_charge["H8"] <= 2, str(cert.max_charge["H8"]))
    cases = charge2_cases(C)
    cert.add("H8 charge-2 cones match cases a/b/c", all(c != "?" for *_, c in cases))
    for name, G in (("H8", C.H8), ("H4", C.H4)):
        sums = all(sum(G.charge_vector(u)) == d for u, d in enumerate(G.degrees()))
        cert.add(f"{name} charges sum to degree", sums)
    cert.add("H4 max degree <= 4", C.H4.max_degree() <= 4, str(C.H4.max_degree()))
    cert.add("shortcuts cross only their middle edge", not shortcut_crossings(C))
    cert.add("Y4 (1+sqrt2)-spanner of T", not verify_yao_vs_t(C.Y, C.T))
    cert.add("1-standard path bounds", not verify_one_standard_paths(C.Y, C.A))
    for stage in ("H8", "H6", "H4"):
        bad = verify_standard_path_bounds(C, stage)
        cert.add(f"{stage} standard path bounds", not bad, str(bad[:3]) if bad else "")
    if stretch and len(P) >= 2:
        for name, G, bound in (("Y4", C.Y.edges, None), ("H4", C.H4, H4_STRETCH_BOUND)):
            try:
                rep = stretch_factor(G, P, tag=name, bound=bound)
            except DisconnectedGraph as exc:
                cert.add(f"{name} connected", False, str(exc))
                continue
            cert.stretch[name] = rep.max_ratio
            if bound is not None:
                cert.add(f"{name} stretch <= {bound:.6g}", not rep.violations, f"{rep.max_ratio:.6f}")
        if cert.stretch.get("H4", 0.0) > EMPIRICAL_STRETCH:
            cert.warnings.append(f"H4 stretch {cert.stretch['H4']:.4f} exceeds {EMPIRICAL_STRETCH}")
    return cert


def euler_ok(T) -> bool:
    """V - E + F == 1 + C with faces from the rotation system (C = components)."""
    n = T.n
    if n == 0:
        return True
    faces = T.faces
    comps = _components(n, T.edges)
    isolated = sum(1 for u in range(n) if not T.rings[u])
    walked = len([f for f in faces if len(f) > 1 or T.rings[f[0]]])
    F = walked - (comps - isolated) + 1 if walked else 1
    return n - len(T.edges) + F == 1 + comps


def _components(n, edges) -> int:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        parent[find(a)] = find(b)
    return len({find(x) for x in range(n)})


def signed_area2(P, cycle) -> int:
    s = 0
    for k in range(len(cycle)):
        x0, y0 = P[cycle[k]]
        x1, y1 = P[cycle[(k + 1) % len(cycle)]]
        s += x0 * y1 - x1 * y0
    return s


def convex_hull(P) -> list[int]:
    """Strict convex hull (no collinear points), CCW, by Andrew's monotone chain."""
    from .geometry import orient

    idx = sorted(range(len(P)), key=lambda i: P[i])
    if len(idx) < 3:
        return idx
    lower: list[int] = []
    for i in idx:
        while len(lower) >= 2 and orient(P[lower[-2]], P[lower[-1]], P[i]) <= 0:
            lower.pop()
        lower.append(i)
    upper: list[int] = []
    for i in reversed(idx):
        while len(upper) >= 2 and orient(P[upper[-2]], P[upper[-1]], P[i]) <= 0:
            upper.pop()
        upper.append(i)
    return lower[:-1] + upper[:-1]


def triangulation_faces_ok(T) -> tuple[bool, str]:
    """Bounded faces are triangles and the outer face boundary visits every hull vertex."""
    P = T.points
    if T.n < 3:
        return True, ""
    faces = T.faces
    outer = [f for f in faces if signed_area2(P, f) <= 0]
    inner = [f for f in faces if signed_area2(P, f) > 0]
    if len(outer) != 1:
        return False, f"{len(outer)} candidate outer faces"
    bad = [f for f in inner if len(f) != 3]
    if bad:
        return False, f"non-triangular face {bad[0]}"
    hull = convex_hull(P)
    if not set(hull) <= set(outer[0]):
        return False, "outer face misses a hull vertex"
    return True, ""
