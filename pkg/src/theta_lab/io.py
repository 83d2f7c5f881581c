"""Point-set files, graph JSON and SVG figures."""

from __future__ import annotations

import hashlib
import json
import math
from typing import Iterable, Optional, Sequence
from xml.sax.saxutils import escape

from .errors import ThetaLabError
from .geometry import Point
from .theta_graph import ThetaGraph


class InputFormatError(ThetaLabError, ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


def _number(tok: str, line: int) -> float:
    try:
        v = float(tok)
    except ValueError:
        raise InputFormatError(f"not a number: {tok!r}", line) from None
    if not math.isfinite(v):
        raise InputFormatError(f"coordinate must be finite, got {tok!r}", line)
    return v


def parse_points(text: str) -> list[Point]:
    """Plain text (``x y`` per line, ``#`` comments) or JSON ``{"points": [...]}``.

    The JSON report written by ``theta-lab build`` is accepted as well.
    """
    if text.lstrip().startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputFormatError(f"invalid JSON: {exc.msg}", exc.lineno) from None
        if isinstance(doc, dict) and "points" not in doc and isinstance(doc.get("results"), dict):
            doc = doc["results"]  # a `theta-lab build` report reads back as its graph's points
        pts = doc.get("points") if isinstance(doc, dict) else None
        if not isinstance(pts, list):
            raise InputFormatError('JSON input needs a "points" list')
        out = []
        for i, p in enumerate(pts):
            if not (isinstance(p, (list, tuple)) and len(p) == 2):
                raise InputFormatError(f"point {i} is not an [x, y] pair")
            if not all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in p):
                raise InputFormatError(f"point {i} has a non-numeric coordinate")
            if not all(math.isfinite(c) for c in p):
                raise InputFormatError(f"point {i} has a non-finite coordinate")
            out.append(Point(float(p[0]), float(p[1])))
        return out
    out = []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        toks = line.split()
        if len(toks) != 2:
            raise InputFormatError(f"expected two numbers, got {len(toks)} fields", no)
        out.append(Point(_number(toks[0], no), _number(toks[1], no)))
    return out


def format_points(points: Iterable[Sequence[float]]) -> str:
    return "".join(f"{float(x)!r} {float(y)!r}\n" for x, y in points)


def digest(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def graph_to_dict(g: ThetaGraph) -> dict:
    return {
        "k": g.k,
        "points": [[p.x, p.y] for p in g.points],
        "edges": [list(e) for e in g.sorted_edges()],
        "cone_targets": [list(row) for row in g.cone_target],
    }


def render_svg(g: ThetaGraph, highlight: Sequence[int] = (), size: int = 600, margin: int = 20) -> str:
    """One <line> per edge, one <circle> per point; a highlighted path is a <polyline>."""
    xs = [p.x for p in g.points]
    ys = [p.y for p in g.points]
    w = max(max(xs) - min(xs), max(ys) - min(ys)) or 1.0
    scale = (size - 2 * margin) / w
    x0, y1 = min(xs), max(ys)

    def xy(i: int) -> tuple[float, float]:
        p = g.points[i]
        return margin + (p.x - x0) * scale, margin + (y1 - p.y) * scale

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f"<title>{escape(f'Theta_{g.k} graph, {g.n} points, {len(g.edges)} edges')}</title>",
        '<g stroke="#555" stroke-width="1">',
    ]
    for u, v in g.sorted_edges():
        (ax, ay), (bx, by) = xy(u), xy(v)
        parts.append(f'<line x1="{ax:.3f}" y1="{ay:.3f}" x2="{bx:.3f}" y2="{by:.3f}"/>')
    parts.append("</g>")
    if len(highlight) > 1:
        pts = " ".join(f"{x:.3f},{y:.3f}" for x, y in map(xy, highlight))
        parts.append(f'<polyline points="{pts}" fill="none" stroke="#d62728" stroke-width="3"/>')
    parts.append('<g fill="#1f77b4">')
    for i in range(g.n):
        x, y = xy(i)
        parts.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="3"/>')
    parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
