"""Immutable geometric primitives shared by every other module.

Coordinates are plain 64-bit floats; all downstream tolerances sit far
above double rounding at the scales this package targets, so there is no
arbitrary-precision path anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import _kernels
from .errors import DimensionMismatch

__all__ = [
    "Point",
    "PointSet",
    "Pattern",
    "Homothety",
    "AxisBox",
    "distance",
    "min_pairwise_distance",
    "diameter",
    "apply_homothety",
]


def _as_floats(coords: Iterable[float]) -> tuple[float, ...]:
    out = tuple(float(c) for c in coords)
    if not out:
        raise ValueError("a point needs at least one coordinate")
    for c in out:
        if not math.isfinite(c):
            raise ValueError(f"non-finite coordinate {c!r}")
    return out


@dataclass(frozen=True, init=False)
class Point:
    """A point in R^d; coordinates validated finite at construction."""

    coords: tuple[float, ...]

    def __init__(self, coords: Iterable[float]):
        object.__setattr__(self, "coords", _as_floats(coords))

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __getitem__(self, i: int) -> float:
        return self.coords[i]

    def __iter__(self):
        return iter(self.coords)


def distance(p: Point, q: Point) -> float:
    """Euclidean distance."""
    if len(p.coords) != len(q.coords):
        raise DimensionMismatch(f"dim {len(p.coords)} vs {len(q.coords)}")
    return math.dist(p.coords, q.coords)


def _coerce_points(points, dim: int) -> tuple[Point, ...]:
    pts = tuple(p if isinstance(p, Point) else Point(p) for p in points)
    for p in pts:
        if p.dim != dim:
            raise DimensionMismatch(f"point of dim {p.dim} in a dim-{dim} set")
    return pts


@dataclass(frozen=True, init=False)
class PointSet:
    """Immutable, dimension-tagged collection of points."""

    dim: int
    points: tuple[Point, ...]

    def __init__(self, dim: int, points: Iterable):
        dim = int(dim)
        if dim < 1:
            raise ValueError("dimension must be a positive integer")
        pts = _coerce_points(points, dim)
        if not pts:
            raise ValueError("point set must be nonempty")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "points", pts)

    @classmethod
    def from_coords(cls, dim: int, rows: Iterable[Sequence[float]]) -> "PointSet":
        return cls(dim, rows)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i: int) -> Point:
        return self.points[i]

    def flat(self) -> list[float]:
        """Row-major coordinate list, the layout the kernels consume."""
        out: list[float] = []
        for p in self.points:
            out.extend(p.coords)
        return out

    def values(self) -> tuple[float, ...]:
        """1-D convenience: the raw coordinates."""
        if self.dim != 1:
            raise DimensionMismatch("values() is only defined for dim 1")
        return tuple(p.coords[0] for p in self.points)

    def subset(self, indices: Iterable[int]) -> "PointSet":
        return PointSet(self.dim, [self.points[i] for i in indices])


@dataclass(frozen=True, init=False)
class Pattern:
    """A target pattern: k >= 2 pairwise-distinct points with cached metrics."""

    dim: int
    points: tuple[Point, ...]
    min_pairwise: float
    diameter: float

    def __init__(self, dim: int, points: Iterable):
        dim = int(dim)
        if dim < 1:
            raise ValueError("dimension must be a positive integer")
        pts = _coerce_points(points, dim)
        if len(pts) < 2:
            raise ValueError("a pattern needs at least two points")
        seen = set()
        for p in pts:
            if p.coords in seen:
                raise ValueError(f"pattern points must be distinct (repeated {p.coords})")
            seen.add(p.coords)
        flat: list[float] = []
        for p in pts:
            flat.extend(p.coords)
        mp = math.sqrt(_kernels.min_pairwise_sq(flat, dim))
        dia = math.sqrt(_kernels.max_pairwise_sq(flat, dim))
        if mp <= 0.0:
            raise ValueError("pattern points are numerically coincident")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "min_pairwise", mp)
        object.__setattr__(self, "diameter", dia)

    @classmethod
    def from_pointset(cls, s: PointSet) -> "Pattern":
        return cls(s.dim, s.points)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i: int) -> Point:
        return self.points[i]


@dataclass(frozen=True, init=False)
class Homothety:
    """x -> anchor + scale * x with scale > 0."""

    anchor: Point
    scale: float

    def __init__(self, anchor, scale: float):
        anchor = anchor if isinstance(anchor, Point) else Point(anchor)
        scale = float(scale)
        if not (scale > 0.0 and math.isfinite(scale)):
            raise ValueError("scale must be strictly positive and finite")
        object.__setattr__(self, "anchor", anchor)
        object.__setattr__(self, "scale", scale)

    def apply(self, p: Point) -> Point:
        if p.dim != self.anchor.dim:
            raise DimensionMismatch("homothety and point dimensions differ")
        return Point(tuple(a + self.scale * x for a, x in zip(self.anchor, p)))


@dataclass(frozen=True, init=False)
class AxisBox:
    """The cube [low, low + side]^d."""

    low: Point
    side: float

    def __init__(self, low, side: float):
        low = low if isinstance(low, Point) else Point(low)
        side = float(side)
        if not (side > 0.0 and math.isfinite(side)):
            raise ValueError("side must be strictly positive and finite")
        object.__setattr__(self, "low", low)
        object.__setattr__(self, "side", side)


def min_pairwise_distance(s: PointSet | Pattern) -> float:
    """Minimum pairwise Euclidean distance; naive scan, callers keep n small."""
    if len(s.points) < 2:
        raise ValueError("need at least two points")
    flat: list[float] = []
    for p in s.points:
        flat.extend(p.coords)
    return math.sqrt(_kernels.min_pairwise_sq(flat, s.dim))


def diameter(s: PointSet | Pattern) -> float:
    """Maximum pairwise Euclidean distance."""
    if len(s.points) < 2:
        raise ValueError("need at least two points")
    flat: list[float] = []
    for p in s.points:
        flat.extend(p.coords)
    return math.sqrt(_kernels.max_pairwise_sq(flat, s.dim))


def apply_homothety(h: Homothety, p: Pattern) -> PointSet:
    """The exact image {anchor + scale * p_i} as a point set."""
    if h.anchor.dim != p.dim:
        raise DimensionMismatch("homothety and pattern dimensions differ")
    return PointSet(p.dim, [h.apply(pt) for pt in p.points])
