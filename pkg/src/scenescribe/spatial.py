"""Single-frame spatial relations: topology, relative position, distance, size.

Regions are axis-aligned rectangles, so every relation reduces to per-axis
interval comparison. The 7-way per-axis position relations are a coarsening
of the 13 Allen cases (see POSITION_COARSENING below), applied with an
explicit axis polarity so image data (y grows downward) and floorplan data
(y grows upward) both read correctly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .core import Box2, Observation, euclidean
from .errors import GeometryMissing

Extent = tuple[float, float]


def _axis_allen(a: Extent, b: Extent) -> str:
    """Allen relation between two 1D extents (lo < hi each)."""
    s1, e1 = a
    s2, e2 = b
    if e1 < s2:
        return "before"
    if e2 < s1:
        return "after"
    if e1 == s2:
        return "meets"
    if e2 == s1:
        return "met_by"
    if s1 == s2 and e1 == e2:
        return "equal"
    if s1 == s2:
        return "starts" if e1 < e2 else "started_by"
    if e1 == e2:
        return "finishes" if s1 > s2 else "finished_by"
    if s2 < s1 and e1 < e2:
        return "during"
    if s1 < s2 and e2 < e1:
        return "contains"
    if s1 < s2 < e1 < e2:
        return "overlaps"
    return "overlapped_by"


def rcc8(a: Box2, b: Box2) -> str:
    """RCC-8 relation of rectangle a with respect to rectangle b.

    Interiors and boundaries come from per-axis interval overlap: closures
    intersect iff the closed extents intersect on both axes, interiors iff
    the open extents do.
    """
    ax, ay = a.x_extent(), a.y_extent()
    bx, by = b.x_extent(), b.y_extent()

    closures = ax[0] <= bx[1] and bx[0] <= ax[1] and ay[0] <= by[1] and by[0] <= ay[1]
    if not closures:
        return "dc"
    interiors = ax[0] < bx[1] and bx[0] < ax[1] and ay[0] < by[1] and by[0] < ay[1]
    if not interiors:
        return "ec"
    if ax == bx and ay == by:
        return "eq"
    a_in_b = bx[0] <= ax[0] and ax[1] <= bx[1] and by[0] <= ay[0] and ay[1] <= by[1]
    if a_in_b:
        strict = bx[0] < ax[0] and ax[1] < bx[1] and by[0] < ay[0] and ay[1] < by[1]
        return "ntpp" if strict else "tpp"
    b_in_a = ax[0] <= bx[0] and bx[1] <= ax[1] and ay[0] <= by[0] and by[1] <= ay[1]
    if b_in_a:
        strict = ax[0] < bx[0] and bx[1] < ax[1] and ay[0] < by[0] and by[1] < ay[1]
        return "ntpp_i" if strict else "tpp_i"
    return "po"


# Allen case -> signed coarse position: -3 entirely at smaller coordinates,
# -2 touching from the smaller side, -1 leaning smaller, 0 centred/equal,
# +1 leaning larger, +2 touching from the larger side, +3 entirely larger.
# The containment-family cases (starts/during/finishes and inverses) are
# classified by midpoint order; an exact midpoint tie is 0.
POSITION_COARSENING = {
    "before": -3,
    "meets": -2,
    "overlaps": -1,
    "equal": 0,
    "overlapped_by": 1,
    "met_by": 2,
    "after": 3,
}

_MIDPOINT_CASES = frozenset(
    {"starts", "during", "finishes", "started_by", "contains", "finished_by"}
)

# Symbol tables indexed by coarse position -3..+3, in "smaller coordinate
# first" order. Axis polarity picks the direction or reverses it.
VERTICAL_SYMBOLS = (
    "above", "along_above", "overlaps_above", "vertically_equal",
    "overlaps_below", "along_below", "below",
)
HORIZONTAL_SYMBOLS = (
    "left", "along_left", "overlaps_left", "horizontally_equal",
    "overlaps_right", "along_right", "right",
)
DEPTH_SYMBOLS = (
    "closer", "along_closer", "overlaps_closer", "distance_equal",
    "overlaps_further", "along_further", "further",
)


def _coarse_position(a: Extent, b: Extent) -> int:
    case = _axis_allen(a, b)
    if case in _MIDPOINT_CASES:
        mid_a = (a[0] + a[1]) / 2.0
        mid_b = (b[0] + b[1]) / 2.0
        if mid_a < mid_b:
            return -1
        if mid_a > mid_b:
            return 1
        return 0
    return POSITION_COARSENING[case]


def position_1d(a: Extent, b: Extent, symbols: tuple[str, ...],
                smaller_first: bool = True) -> str:
    """7-way per-axis relation of extent a w.r.t. extent b.

    `symbols` is one of the per-axis symbol tables; `smaller_first` says
    whether the table's first symbol corresponds to smaller coordinates
    (image y: above is smaller; floorplan y: above is larger).
    """
    index = _coarse_position(a, b)
    if not smaller_first:
        index = -index
    return symbols[index + 3]


@dataclass(frozen=True)
class PositionTriple:
    """Per-axis position relations; depth is absent without depth data."""

    vertical: str
    horizontal: str
    depth: Optional[str] = None


def relative_position(a: Observation, b: Observation, y_down: bool = True,
                      eps_depth: float = 0.5) -> PositionTriple:
    """Relative position of observation a w.r.t. b on all available axes.

    Both observations must carry boxes. The depth axis is computed only when
    both carry depth, widening each scalar depth by eps_depth into an extent.
    """
    if a.box is None or b.box is None:
        raise GeometryMissing("relative_position needs boxes on both observations")
    vertical = position_1d(a.box.y_extent(), b.box.y_extent(),
                           VERTICAL_SYMBOLS, smaller_first=y_down)
    horizontal = position_1d(a.box.x_extent(), b.box.x_extent(),
                             HORIZONTAL_SYMBOLS, smaller_first=True)
    depth = None
    if a.depth is not None and b.depth is not None:
        depth = position_1d(
            (a.depth - eps_depth, a.depth + eps_depth),
            (b.depth - eps_depth, b.depth + eps_depth),
            DEPTH_SYMBOLS, smaller_first=True,
        )
    return PositionTriple(vertical=vertical, horizontal=horizontal, depth=depth)


Point = tuple[float, float]


def relative_distance(p1: Point, p2: Point, p3: Point, eps_dist: float = 0.0) -> str:
    """Ternary distance comparison of p1 and p2 relative to p3."""
    for p in (p1, p2, p3):
        if not all(math.isfinite(c) for c in p):
            raise ValueError(f"non-finite coordinate in {p}")
    d1 = euclidean(p1, p3)
    d2 = euclidean(p2, p3)
    if d1 < d2 - eps_dist:
        return "closer"
    if d1 > d2 + eps_dist:
        return "further"
    return "same"


def relative_size(a: Box2, b: Box2, eps_size: float = 0.05) -> str:
    """Area comparison with relative tolerance eps_size."""
    area_a = a.area
    area_b = b.area
    if abs(area_a - area_b) <= eps_size * max(area_a, area_b):
        return "same"
    return "smaller" if area_a < area_b else "bigger"
