"""Deterministic SVG drawings of instances and stage graphs (y axis pointing up)."""
from __future__ import annotations

from pathlib import Path

from .errors import InconsistentFiles
from .io import GraphFile, InstanceFile, build

WIDTH = 800
MARGIN = 30

STYLE = """
.site { fill: #222; }
.label { font: 10px sans-serif; fill: #555; }
.edge { stroke: #888; stroke-width: 1.2; }
.anchor { stroke: #1f5fbf; stroke-width: 2.2; }
.canonical { stroke: #c03030; stroke-width: 1.6; }
.shortcut { stroke: #000; stroke-width: 2.4; }
.removed { stroke: #bbb; stroke-width: 1; stroke-dasharray: 4 3; }
"""


def _classes(inst: InstanceFile, graph: GraphFile) -> dict[tuple[int, int], str]:
    """Layer class of each drawn segment."""
    if graph.stage == "delaunay" or len(inst.points) < 2:
        return {e: "edge" for e in graph.edges}
    from .spanner import construct
    from .yao import ekey

    C = construct(inst.pointset())
    Y, A = C.Y, C.A
    out: dict[tuple[int, int], str] = {}
    for e in graph.edges:
        u, v = e
        if A.is_anchor(u, v) or A.is_anchor(v, u):
            out[e] = "anchor"
        elif Y.is_canonical(u, v) and Y.has_arc(u, v) != Y.has_arc(v, u):
            out[e] = "canonical"
        else:
            out[e] = "edge"
    for e in graph.shortcuts:
        out[e] = "shortcut"
    if graph.stage in ("h8", "h6", "h4"):
        for e in sorted(C.T.edges - graph.all_edges):
            out.setdefault(ekey(*e), "removed")
    return out


def check_consistent(inst: InstanceFile, graph: GraphFile) -> None:
    if graph.n != len(inst.points):
        raise InconsistentFiles(f"graph has n={graph.n}, instance has {len(inst.points)} points")
    expected = build(inst, graph.stage)
    if expected.edges != graph.edges or expected.shortcuts != graph.shortcuts:
        raise InconsistentFiles(f"graph file is not the {graph.stage} stage of this instance")


def svg(inst: InstanceFile, graph: GraphFile, labels: bool = True) -> str:
    """Render ``graph`` over ``inst``; identical inputs give identical bytes."""
    check_consistent(inst, graph)
    pts = inst.points
    xs = [p[0] for p in pts] or [0]
    ys = [p[1] for p in pts] or [0]
    x0, y0 = min(xs), min(ys)
    span = max(max(xs) - x0, max(ys) - y0, 1)
    scale = (WIDTH - 2 * MARGIN) / span
    height = round((max(ys) - y0) * scale) + 2 * MARGIN

    def tx(p):
        return f"{MARGIN + (p[0] - x0) * scale:.2f}", f"{height - MARGIN - (p[1] - y0) * scale:.2f}"

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" '
        f'viewBox="0 0 {WIDTH} {height}">',
        f"<style>{STYLE}</style>",
    ]
    classes = _classes(inst, graph)
    order = {"removed": 0, "edge": 1, "canonical": 2, "anchor": 3, "shortcut": 4}
    for (a, b), cls in sorted(classes.items(), key=lambda kv: (order[kv[1]], kv[0])):
        (x1, y1), (x2, y2) = tx(pts[a]), tx(pts[b])
        lines.append(f'<line class="{cls}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>')
    for i, p in enumerate(pts):
        x, y = tx(p)
        lines.append(f'<circle class="site" cx="{x}" cy="{y}" r="3"/>')
        if labels:
            lines.append(f'<text class="label" x="{float(x) + 4:.2f}" y="{float(y) - 4:.2f}">{i}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def write_svg(inst: InstanceFile, graph: GraphFile, out) -> Path:
    path = Path(out)
    path.write_text(svg(inst, graph))
    return path
