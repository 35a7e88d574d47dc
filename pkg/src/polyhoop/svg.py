"""Deterministic SVG drawings of one-variable functions and low-dimensional polyhedra."""
from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Sequence, Union

from .exact import fmt
from .pl import PLFunction
from .polytope import Polyhedron, Polytope

SIZE = 400
MARGIN = 40
SPAN = SIZE - 2 * MARGIN
COLORS = ("#1f4e9c", "#c0392b", "#2e7d32", "#8e44ad", "#d35400")

Plottable = Union[PLFunction, Polyhedron, Sequence[PLFunction]]


def _num(v: Fraction) -> str:
    s = f"{float(v):.3f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def _xy(p: Sequence[Fraction]) -> str:
    x, y = p
    return f"{_num(MARGIN + SPAN * x)},{_num(MARGIN + SPAN * (1 - y))}"


def _exact(points) -> str:
    return " ".join("(" + ",".join(fmt(c) for c in p) + ")" for p in points)


def _frame(title: str) -> list[str]:
    lo, hi = MARGIN, MARGIN + SPAN
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        f"<title>{title}</title>",
        f'<rect x="{lo}" y="{lo}" width="{SPAN}" height="{SPAN}" fill="none" stroke="#999" '
        'stroke-width="1"/>',
        f'<text x="{lo}" y="{hi + 16}" font-size="12" text-anchor="middle">0</text>',
        f'<text x="{hi}" y="{hi + 16}" font-size="12" text-anchor="middle">1</text>',
        f'<text x="{lo - 8}" y="{lo + 4}" font-size="12" text-anchor="end">1</text>',
    ]


def _tick(x: Fraction) -> str:
    px = _num(MARGIN + SPAN * x)
    return (f'<line x1="{px}" y1="{MARGIN + SPAN}" x2="{px}" y2="{MARGIN + SPAN + 4}" stroke="#999"/>'
            f'<text x="{px}" y="{MARGIN + SPAN + 28}" font-size="10" text-anchor="middle">{fmt(x)}</text>')


def _functions(fs: Sequence[PLFunction]) -> list[str]:
    out = _frame("graph of " + ("one function" if len(fs) == 1 else f"{len(fs)} functions"))
    ticks = set()
    for k, f in enumerate(fs):
        pts = f.graph()
        color = COLORS[k % len(COLORS)]
        out.append(f'<polyline class="graph" fill="none" stroke="{color}" stroke-width="2" '
                   f'data-vertices="{_exact(pts)}" points="{" ".join(_xy(p) for p in pts)}"/>')
        for p in pts[1:-1]:
            ticks.add(p[0])
            out.append(f'<circle cx="{_xy(p).split(",")[0]}" cy="{_xy(p).split(",")[1]}" r="3" '
                       f'fill="{color}" data-vertex="{_exact([p])}"/>')
    out.extend(_tick(x) for x in sorted(ticks))
    out.append("</svg>")
    return out


def _embed(p: Polytope, n: int) -> list[tuple[Fraction, Fraction]]:
    if n == 1:
        return [(v[0], Fraction(0)) for v in p.vertices]
    return list(p.vertices)


def _cyclic(pts: list[tuple[Fraction, Fraction]]) -> list[tuple[Fraction, Fraction]]:
    """Vertices of a convex polygon in boundary order (exact angular sort)."""
    cx = sum(p[0] for p in pts) / len(pts)
    cy = sum(p[1] for p in pts) / len(pts)

    def key(p):
        dx, dy = p[0] - cx, p[1] - cy
        # exact pseudo-angle: monotone in the true angle within each half plane
        r = dx / (abs(dx) + abs(dy))
        return (0, -r) if (dy > 0 or (dy == 0 and dx > 0)) else (1, r)

    return sorted(pts, key=key)


def _polyhedron(P: Polyhedron) -> list[str]:
    out = _frame(f"polyhedron in [0,1]^{P.n}")
    for p in P.polytopes:
        pts = _embed(p, P.n)
        data = _exact(p.vertices)
        if p.dim == 2:
            ring = _cyclic(pts)
            out.append(f'<polygon class="cell" fill="#1f4e9c" fill-opacity="0.35" stroke="#1f4e9c" '
                       f'data-vertices="{data}" points="{" ".join(_xy(q) for q in ring)}"/>')
        elif p.dim == 1:
            a, b = pts[0], pts[-1]
            xa, ya = _xy(a).split(",")
            xb, yb = _xy(b).split(",")
            out.append(f'<line class="edge" stroke="#1f4e9c" stroke-width="3" data-vertices="{data}" '
                       f'x1="{xa}" y1="{ya}" x2="{xb}" y2="{yb}"/>')
        else:
            x, y = _xy(pts[0]).split(",")
            out.append(f'<circle class="point" r="4" fill="#1f4e9c" data-vertices="{data}" '
                       f'cx="{x}" cy="{y}"/>')
    out.append("</svg>")
    return out


def emit_svg(target: Plottable, path: str | Path | None = None) -> str:
    """Render ``target`` as an SVG document; also write it to ``path`` when given."""
    if isinstance(target, Polyhedron):
        if target.n > 2:
            raise ValueError("not plottable: polyhedron of ambient dimension > 2")
        lines = _polyhedron(target)
    else:
        fs = [target] if isinstance(target, PLFunction) else list(target)
        if not fs:
            raise ValueError("nothing to plot")
        if any(f.n != 1 for f in fs):
            raise ValueError("not plottable: only one-variable functions can be graphed")
        lines = _functions(fs)
    doc = "\n".join(lines) + "\n"
    if path is not None:
        Path(path).write_text(doc, encoding="utf-8")
    return doc
