"""JSON instance and graph files, random instance generation, and jitter repair."""
from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import CoordinateSpaceExhausted, InputError
from .geometry import MAX_COORD, PointSet

VERSION = 1
STAGES = ("delaunay", "y4", "h8", "h6", "h4")


@dataclass(frozen=True)
class InstanceFile:
    points: tuple[tuple[int, int], ...]
    version: int = VERSION

    def dumps(self) -> str:
        pts = ",".join(f"[{x},{y}]" for x, y in self.points)
        return f'{{"version":{self.version},"points":[{pts}]}}\n'

    def pointset(self, check: bool = True) -> PointSet:
        return PointSet(self.points, check=check)


@dataclass(frozen=True)
class GraphFile:
    n: int
    stage: str
    edges: tuple[tuple[int, int], ...]
    shortcuts: tuple[tuple[int, int], ...] = ()
    cutoffs: tuple[tuple[int, int], ...] = ()
    version: int = VERSION

    def __post_init__(self):
        if self.stage not in STAGES:
            raise InputError(f"unknown stage {self.stage!r}")
        for name in ("edges", "shortcuts"):
            pairs = getattr(self, name)
            if list(pairs) != sorted(set(pairs)):
                raise InputError(f"{name} not sorted and duplicate-free")
            for i, j in pairs:
                if not 0 <= i < j < self.n:
                    raise InputError(f"bad pair [{i}, {j}] in {name}")
        for c, o in self.cutoffs:
            if not (0 <= c < self.n and 0 <= o < self.n):
                raise InputError(f"bad cutoff [{c}, {o}]")
        if list(self.cutoffs) != sorted(set(self.cutoffs)):
            raise InputError("cutoffs not sorted and duplicate-free")

    @property
    def all_edges(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges) | frozenset(self.shortcuts)

    def dumps(self) -> str:
        def pairs(ps):
            return "[" + ",".join(f"[{a},{b}]" for a, b in ps) + "]"

        return (
            f'{{"version":{self.version},"n":{self.n},"stage":"{self.stage}",'
            f'"edges":{pairs(self.edges)},"shortcuts":{pairs(self.shortcuts)},'
            f'"cutoffs":{pairs(self.cutoffs)}}}\n'
        )


def _int_pair(p) -> tuple[int, int]:
    if not isinstance(p, (list, tuple)) or len(p) != 2:
        raise InputError(f"expected an [x, y] pair, got {p!r}")
    x, y = p
    if isinstance(x, bool) or isinstance(y, bool) or not isinstance(x, int) or not isinstance(y, int):
        raise InputError(f"coordinates must be integers, got {p!r}")
    return x, y


def _load_json(text: str) -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError("expected a JSON object")
    if data.get("version") != VERSION:
        raise InputError(f"unsupported version {data.get('version')!r}")
    return data


def parse_instance(text: str) -> InstanceFile:
    data = _load_json(text)
    pts = data.get("points")
    if not isinstance(pts, list):
        raise InputError("missing points list")
    return InstanceFile(tuple(_int_pair(p) for p in pts))


def parse_graph(text: str) -> GraphFile:
    data = _load_json(text)
    try:
        return GraphFile(
            n=int(data["n"]),
            stage=data["stage"],
            edges=tuple(_int_pair(e) for e in data["edges"]),
            shortcuts=tuple(_int_pair(e) for e in data.get("shortcuts", [])),
            cutoffs=tuple(_int_pair(e) for e in data.get("cutoffs", [])),
        )
    except KeyError as exc:
        raise InputError(f"missing field {exc}") from exc


def read_instance(path) -> InstanceFile:
    return parse_instance(Path(path).read_text())


def read_graph(path) -> GraphFile:
    return parse_graph(Path(path).read_text())


def worked_example() -> InstanceFile:
    """The 29-point worked example shipped with the package."""
    text = resources.files("plane_spanner").joinpath("data/worked_example.json").read_text()
    return parse_instance(text)


def gen(n: int, seed: int, max_coord: int = MAX_COORD) -> InstanceFile:
    """Uniform random points in [0, max_coord]^2 with distinct x and distinct y values."""
    if n < 1:
        raise InputError("n must be at least 1")
    if not 0 <= max_coord <= MAX_COORD:
        raise InputError(f"max_coord must lie in [0, {MAX_COORD}]")
    if n > max_coord + 1:
        raise CoordinateSpaceExhausted(f"{n} distinct coordinates do not fit in [0, {max_coord}]")
    rng = np.random.default_rng(seed)
    pts: list[tuple[int, int]] = []
    used_x: set[int] = set()
    used_y: set[int] = set()
    # rejection sampling; dense requests fall back to drawing without replacement
    if 4 * n <= max_coord + 1:
        while len(pts) < n:
            x, y = (int(v) for v in rng.integers(0, max_coord + 1, size=2))
            if x in used_x or y in used_y:
                continue
            used_x.add(x)
            used_y.add(y)
            pts.append((x, y))
    else:
        xs = rng.choice(max_coord + 1, size=n, replace=False)
        ys = rng.choice(max_coord + 1, size=n, replace=False)
        pts = [(int(x), int(y)) for x, y in zip(xs, ys)]
    return InstanceFile(tuple(pts))


def perturb(inst: InstanceFile, seed: int) -> InstanceFile:
    """Break coordinate ties: x -> x*n + pi(i), y -> y*n + sigma(i) for seeded permutations.

    Strict order between distinct coordinates is preserved; ties become distinct.
    """
    n = len(inst.points)
    if n == 0:
        return inst
    rng = np.random.default_rng(seed)
    px = rng.permutation(n)
    py = rng.permutation(n)
    pts = tuple((x * n + int(px[i]), y * n + int(py[i])) for i, (x, y) in enumerate(inst.points))
    top = max(max(abs(x), abs(y)) for x, y in pts)
    if top > MAX_COORD:
        raise CoordinateSpaceExhausted(f"perturbed coordinates reach {top} > {MAX_COORD}")
    return InstanceFile(pts)


def build(inst: InstanceFile, stage: str) -> GraphFile:
    """Run the pipeline up to ``stage`` and return the canonical graph file."""
    from .delaunay import build_triangulation
    from .spanner import construct
    from .yao import build_y4

    if stage not in STAGES:
        raise InputError(f"unknown stage {stage!r}")
    P = inst.pointset()
    n = len(P)
    if stage == "delaunay":
        return GraphFile(n, stage, tuple(sorted(build_triangulation(P).edges)))
    if stage == "y4":
        T = build_triangulation(P)
        return GraphFile(n, stage, tuple(sorted(build_y4(P, T).edges)))
    C = construct(P)
    G = C.stage(stage.upper())
    cutoffs = tuple(sorted({(p.cutoff, p.owner) for p in C.pairs})) if stage == "h4" else ()
    return GraphFile(n, stage, tuple(sorted(G.edges)), tuple(sorted(G.shortcuts)), cutoffs)
