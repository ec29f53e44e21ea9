"""Point-set file codec and SVG figure emission.

File format: '#' lines are comments; the first data line is the dimension
d; every following data line holds d space-separated decimals.  Writing
uses shortest round-trip decimal representations, so parse(write(S))
reproduces the coordinates exactly.
"""

from __future__ import annotations

import math
from typing import Iterable, Optional, Sequence

from .errors import ParseError
from .geometry import Point, PointSet

__all__ = ["parse_pointset", "write_pointset", "emit_svg"]


def parse_pointset(data: bytes | str) -> PointSet:
    if isinstance(data, bytes):
        try:
            text = data.decode("ascii")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not 7-bit text: {exc}") from None
    else:
        text = data
    dim: int | None = None
    rows: list[tuple[float, ...]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if dim is None:
            try:
                dim = int(line)
            except ValueError:
                raise ParseError(f"expected the dimension, got {line!r}", lineno) from None
            if dim < 1:
                raise ParseError(f"dimension must be positive, got {dim}", lineno)
            continue
        parts = line.split()
        if len(parts) != dim:
            raise ParseError(f"expected {dim} coordinates, got {len(parts)}", lineno)
        try:
            coords = tuple(float(tok) for tok in parts)
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
        for c in coords:
            if not math.isfinite(c):
                raise ParseError(f"non-finite coordinate {c!r}", lineno)
        rows.append(coords)
    if dim is None:
        raise ParseError("empty file: missing dimension line")
    if not rows:
        raise ParseError("no points in file")
    return PointSet(dim, rows)


def write_pointset(s: PointSet, comment: str | None = None) -> bytes:
    lines = []
    if comment:
        for part in comment.splitlines():
            lines.append(f"# {part}")
    lines.append(str(s.dim))
    for p in s.points:
        lines.append(" ".join(repr(c) for c in p.coords))
    return ("\n".join(lines) + "\n").encode("ascii")


_SVG_W = 640
_SVG_MARGIN = 40.0


def _fmt(v: float) -> str:
    return f"{v:.3f}"


def emit_svg(
    s: PointSet,
    highlight: Optional[Iterable[int]] = None,
    anchors: Optional[Sequence[Point]] = None,
) -> bytes:
    """Deterministic SVG figure: the set as dots, a found subset as filled
    markers, exact anchors as open markers (1-D: tick bars on an axis)."""
    if s.dim > 2:
        raise ValueError("SVG emission supports dim 1 and 2 only")
    hi = sorted(set(int(i) for i in highlight)) if highlight else []
    anchor_pts = list(anchors) if anchors else []

    xs = [p[0] for p in s.points] + [a[0] for a in anchor_pts]
    x_lo, x_hi = min(xs), max(xs)
    x_span = (x_hi - x_lo) or 1.0
    if s.dim == 2:
        ys = [p[1] for p in s.points] + [a[1] for a in anchor_pts]
        y_lo, y_hi = min(ys), max(ys)
        y_span = (y_hi - y_lo) or 1.0
        span = max(x_span, y_span)
        height = _SVG_W
    else:
        span = x_span
        height = 120

    inner = _SVG_W - 2 * _SVG_MARGIN
    scale = inner / span

    def sx(v: float) -> float:
        return _SVG_MARGIN + (v - x_lo) * scale

    def sy(v: float) -> float:
        if s.dim == 1:
            return height / 2.0
        return height - _SVG_MARGIN - (v - y_lo) * scale

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_SVG_W}" height="{height}" viewBox="0 0 {_SVG_W} {height}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    if s.dim == 1:
        mid = height / 2.0
        out.append(
            f'<line x1="{_fmt(_SVG_MARGIN / 2)}" y1="{_fmt(mid)}" '
            f'x2="{_fmt(_SVG_W - _SVG_MARGIN / 2)}" y2="{_fmt(mid)}" '
            'stroke="black" stroke-width="1"/>'
        )
        for a in anchor_pts:
            x = _fmt(sx(a[0]))
            out.append(
                f'<line x1="{x}" y1="{_fmt(mid - 14)}" x2="{x}" y2="{_fmt(mid + 14)}" '
                'stroke="black" stroke-width="3"/>'
            )
    else:
        for a in anchor_pts:
            out.append(
                f'<circle cx="{_fmt(sx(a[0]))}" cy="{_fmt(sy(a[1]))}" r="7" '
                'fill="none" stroke="black" stroke-width="1.5"/>'
            )
    hi_set = set(hi)
    for i, p in enumerate(s.points):
        cx, cy = _fmt(sx(p[0])), _fmt(sy(p[1] if s.dim == 2 else 0.0))
        if i in hi_set:
            out.append(f'<circle cx="{cx}" cy="{cy}" r="5" fill="black"/>')
        else:
            out.append(f'<circle cx="{cx}" cy="{cy}" r="2.5" fill="#888888"/>')
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode("ascii")
