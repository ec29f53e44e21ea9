"""d-dimensional subdivision search: approximate k-grids and, via a
sufficiently fine grid, approximate copies of arbitrary finite patterns.

The grid searcher generalizes the 1-D loop: each step splits the current
cube into (k*s)^d congruent cells, scans the s^d offset systems in
lexicographic order for one whose k^d cells are all occupied, and
otherwise descends into the max-count cell.  The pattern searcher maps the
target pattern onto the nodes of a fine K-grid, runs the grid search, and
post-verifies the selected points against the original pattern.
"""

from __future__ import annotations

import math
from itertools import product
from typing import Optional

import numpy as np

from .bounds import schedule_nd
from .errors import DimensionMismatch, InternalError, ResolutionOverflow
from .geometry import AxisBox, Homothety, Pattern, Point, PointSet
from .search1d import (
    PatternReduction,
    SearchOutcome,
    SearchStep,
    SearchTrace,
    StepDescend,
    StepSuccess,
    _audit_separation,
)
from .verifier import verify_homothetic

__all__ = ["search_grid", "search_pattern", "pattern_grid_resolution"]

DEFAULT_RESOLUTION_CAP = 10_000


def _unit_grid_pattern(dim: int, k: int) -> Pattern:
    pts = [Point(tuple(float(v) for v in m)) for m in product(range(k), repeat=dim)]
    return Pattern(dim, pts)


def search_grid(
    s: PointSet,
    k: int,
    eps: float,
    delta: float,
    c: float,
    *,
    lo=None,
    length: float | None = None,
) -> SearchOutcome:
    """Find an eps-approximate k-grid in a delta-separated set in [lo, lo+L]^d."""
    if int(k) != k or k < 2:
        raise ValueError("k must be an integer >= 2")
    k = int(k)
    d = s.dim
    schedule = schedule_nd(d, k, c, delta, eps)
    coords = np.asarray([p.coords for p in s.points], dtype=float)
    if len(s) >= 2:
        _audit_separation(s.flat(), d, delta)

    lo_vec = coords.min(axis=0) if lo is None else np.asarray(
        [float(v) for v in (lo.coords if isinstance(lo, Point) else lo)], dtype=float
    )
    if lo_vec.shape != (d,):
        raise DimensionMismatch("lo must have one coordinate per axis")
    tight = float((coords.max(axis=0) - lo_vec).max())
    box_len = max(tight, 0.0 if length is None else float(length))
    warnings: list[str] = []
    below = box_len < schedule.z0
    if below:
        warnings.append(
            f"cube side {box_len:g} is below the guarantee threshold z0={schedule.z0:g}"
        )
    if box_len <= 0.0:
        warnings.append("degenerate search cube; nothing to subdivide")
        return SearchOutcome(
            found=False, subset=(), anchors=(), homothety=None, verify=None,
            trace=SearchTrace(()), schedule=schedule,
            below_threshold=below, warnings=tuple(warnings),
        )

    inside = np.all((coords >= lo_vec) & (coords <= lo_vec + box_len), axis=1)
    active = [int(i) for i in np.flatnonzero(inside)]
    ks = k * schedule.s
    shape = (ks,) * d
    cur_lo = lo_vec.copy()
    cur_len = box_len
    steps: list[SearchStep] = []
    pattern = _unit_grid_pattern(d, k)

    needed = k**d
    for _step in range(schedule.j):
        if len(active) < needed:
            # Counts only shrink along the recursion, so no later step can
            # occupy k^d cells; stop instead of subdividing uselessly.
            warnings.append("active point count fell below k^d; stopping early")
            break
        x = cur_len / ks
        if x <= 0.0:
            warnings.append("cell width underflowed; stopping early")
            break
        pts = coords[active] if active else np.empty((0, d))
        idx = np.floor((pts - cur_lo) / x).astype(np.int64)
        np.clip(idx, 0, ks - 1, out=idx)
        counts = np.zeros(shape, dtype=np.int64)
        if len(active):
            np.add.at(counts, tuple(idx.T), 1)
        occ = counts > 0
        box = AxisBox(Point(tuple(float(v) for v in cur_lo)), cur_len)

        hit: Optional[tuple[int, ...]] = None
        for t in product(range(schedule.s), repeat=d):
            view = occ[tuple(slice(ta, None, schedule.s) for ta in t)]
            if view.all():
                hit = t
                break
        if hit is not None:
            flat_cells = [int(v) for v in (idx * (ks ** np.arange(d - 1, -1, -1))).sum(axis=1)]
            first_in_cell: dict[int, int] = {}
            for orig, cell in zip(active, flat_cells):
                if cell not in first_in_cell:
                    first_in_cell[cell] = orig
            chosen: list[int] = []
            anchors: list[Point] = []
            for m in product(range(k), repeat=d):
                cell_axes = tuple(hit[a] + m[a] * schedule.s for a in range(d))
                flat_cell = 0
                for a in range(d):
                    flat_cell = flat_cell * ks + cell_axes[a]
                chosen.append(first_in_cell[flat_cell])
                anchors.append(Point(tuple(cur_lo[a] + cell_axes[a] * x for a in range(d))))
            steps.append(SearchStep(box, cur_len, len(active), StepSuccess(hit, tuple(anchors), tuple(chosen))))
            candidate = PointSet(d, [s.points[i] for i in chosen])
            result = verify_homothetic(candidate, pattern, list(range(len(pattern))), eps)
            if not result.accepted:
                raise InternalError(
                    "grid success failed homothety verification; this cannot happen"
                )
            witness = Homothety(
                Point(tuple(cur_lo[a] + hit[a] * x for a in range(d))), schedule.s * x
            )
            return SearchOutcome(
                found=True, subset=tuple(chosen), anchors=tuple(anchors),
                homothety=witness, verify=result,
                trace=SearchTrace(tuple(steps)), schedule=schedule,
                below_threshold=below, warnings=tuple(warnings),
            )
        best_flat = int(counts.argmax())
        best_multi = tuple(int(v) for v in np.unravel_index(best_flat, shape))
        steps.append(SearchStep(box, cur_len, len(active), StepDescend(best_multi)))
        if len(active):
            flat_cells = (idx * (ks ** np.arange(d - 1, -1, -1))).sum(axis=1)
            active = [orig for orig, cell in zip(active, flat_cells) if int(cell) == best_flat]
        cur_lo = cur_lo + np.asarray(best_multi, dtype=float) * x
        cur_len = x

    return SearchOutcome(
        found=False, subset=(), anchors=(), homothety=None, verify=None,
        trace=SearchTrace(tuple(steps)), schedule=schedule,
        below_threshold=below, warnings=tuple(warnings),
    )


def pattern_grid_resolution(p: Pattern, eps: float, d: int) -> tuple[int, float]:
    """Grid size K and grid tolerance eps_g realizing the pattern reduction.

    Guarantees that distinct pattern points round to distinct nodes of the
    {0..K-1}^d grid and that node rounding error plus grid-search error fit
    inside the eps * scale * min_pairwise ball of the original pattern.
    """
    eps = float(eps)
    if not (0.0 < eps <= 1.0 / 3.0):
        raise ValueError("eps must lie in (0, 1/3]")
    if p.min_pairwise <= 0.0:
        raise ValueError("degenerate pattern")
    spans = [
        max(pt.coords[a] for pt in p.points) - min(pt.coords[a] for pt in p.points)
        for a in range(p.dim)
    ]
    d_inf = max(spans)
    eps_g = min(eps / 2.0, 1.0 / 3.0)
    K = 1 + math.ceil((eps_g + math.sqrt(d) / 2.0) * d_inf / (eps_g * p.min_pairwise))
    return K, eps_g


def search_pattern(
    s: PointSet,
    p: Pattern,
    eps: float,
    delta: float,
    c: float,
    *,
    lo=None,
    length: float | None = None,
    resolution_cap: int = DEFAULT_RESOLUTION_CAP,
) -> SearchOutcome:
    """Find an eps-approximate homothetic copy of an arbitrary finite pattern.

    Runs the k-grid search on a sufficiently fine K-grid, then reads the
    pattern's copy off the found grid points and post-verifies it against
    the original pattern; found=True only if that certificate passes.
    """
    if s.dim != p.dim:
        raise DimensionMismatch("point set and pattern dimensions differ")
    d = s.dim
    K, eps_g = pattern_grid_resolution(p, eps, d)
    if K > resolution_cap:
        raise ResolutionOverflow(
            f"pattern reduction needs a {K}-grid per axis (cap {resolution_cap})"
        )
    p_lo = [min(pt.coords[a] for pt in p.points) for a in range(d)]
    spans = [
        max(pt.coords[a] for pt in p.points) - min(pt.coords[a] for pt in p.points)
        for a in range(d)
    ]
    d_inf = max(spans)
    nodes = []
    for pt in p.points:
        nodes.append(tuple(
            int(round((pt.coords[a] - p_lo[a]) * (K - 1) / d_inf)) for a in range(d)
        ))
    if len(set(nodes)) != len(nodes):
        raise InternalError("pattern nodes collided; resolution formula violated")

    inner = search_grid(s, K, eps_g, delta, c, lo=lo, length=length)
    reduction = PatternReduction(grid_k=K, grid_eps=eps_g, nodes=tuple(nodes))
    if not inner.found:
        return SearchOutcome(
            found=False, subset=(), anchors=(), homothety=None, verify=None,
            trace=inner.trace, schedule=inner.schedule,
            below_threshold=inner.below_threshold, warnings=inner.warnings,
            reduction=reduction,
        )

    def node_flat(node: tuple[int, ...]) -> int:
        f = 0
        for a in range(d):
            f = f * K + node[a]
        return f

    subset = tuple(inner.subset[node_flat(n)] for n in nodes)
    g = inner.homothety.scale
    a0 = inner.homothety.anchor
    scale = g * (K - 1) / d_inf
    anchor = Point(tuple(a0.coords[a] - scale * p_lo[a] for a in range(d)))
    witness = Homothety(anchor, scale)
    anchors = tuple(witness.apply(pt) for pt in p.points)
    candidate = PointSet(d, [s.points[i] for i in subset])
    result = verify_homothetic(candidate, p, list(range(len(p))), eps)
    warnings = inner.warnings
    if not result.accepted:
        warnings = warnings + ("pattern post-verification failed; reporting not found",)
    return SearchOutcome(
        found=result.accepted, subset=subset, anchors=anchors,
        homothety=witness, verify=result,
        trace=inner.trace, schedule=inner.schedule,
        below_threshold=inner.below_threshold, warnings=warnings,
        reduction=reduction,
    )
