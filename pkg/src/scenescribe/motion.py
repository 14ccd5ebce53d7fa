"""Qualitative motion: distance change between tracks and per-axis size change."""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .core import TimeLike, Track, as_timepoint, euclidean
from .errors import GeometryMissing

DEFAULT_MAX_GAP = Fraction(1, 2)  # seconds of track gap interpolation allows

AXES = ("horizontal", "vertical", "depth")


def movement(a: Track, b: Track, window: tuple[TimeLike, TimeLike],
             eps_motion: float, max_gap: Fraction = DEFAULT_MAX_GAP) -> str:
    """Classify the distance change between two tracks over a window.

    Distance is Euclidean between representative points (box centroid, or the
    raw point for point tracks). Endpoints may be linearly interpolated
    across gaps up to max_gap; wider gaps raise SamplingGap. Reversing the
    window flips approaching and receding.
    """
    t0 = as_timepoint(window[0])
    t1 = as_timepoint(window[1])
    d0 = euclidean(a.sample_point(t0, max_gap), b.sample_point(t0, max_gap))
    d1 = euclidean(a.sample_point(t1, max_gap), b.sample_point(t1, max_gap))
    if d1 < d0 - eps_motion:
        return "approaching"
    if d1 > d0 + eps_motion:
        return "receding"
    return "static"


def _axis_extent(track: Track, axis: str, t) -> float:
    obs = track.observation_at(t)
    if obs is None:
        raise GeometryMissing(f"track {track.entity_id} not observed at {t}")
    if axis == "depth":
        # observations carry scalar depth only; there is no depth extent to
        # compare, so the depth axis is unevaluable for size change
        raise GeometryMissing("no depth extent in observations; depth size change unavailable")
    if obs.box is None:
        raise GeometryMissing(f"track {track.entity_id} has no box at {t}")
    if axis == "horizontal":
        return obs.box.xmax - obs.box.xmin
    if axis == "vertical":
        return obs.box.ymax - obs.box.ymin
    raise ValueError(f"unknown axis {axis!r}")


def size_motion(a: Track, axis: str, window: tuple[TimeLike, TimeLike],
                eps_motion: float) -> str:
    """Classify one axis of an object's extent change over a window."""
    if axis not in AXES:
        raise ValueError(f"axis must be one of {AXES}, got {axis!r}")
    t0 = as_timepoint(window[0])
    t1 = as_timepoint(window[1])
    e0 = _axis_extent(a, axis, t0)
    e1 = _axis_extent(a, axis, t1)
    if e1 > e0 + eps_motion:
        return "elongating"
    if e1 < e0 - eps_motion:
        return "shortening"
    return "static"


def default_eps_motion(scene_diagonal: float, window_duration: float) -> float:
    """Static band of 1% of the scene diagonal per second, scaled by duration."""
    return 0.01 * scene_diagonal * abs(window_duration)
