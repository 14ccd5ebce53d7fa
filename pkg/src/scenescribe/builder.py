"""Build a narrative store from raw tracks and named regions.

The pipeline evaluates every configured relation family at every frame of
the global frame grid (the sorted union of observation timestamps), then
extracts maximal per-relation runs with run-length smoothing, and finally
runs the configured schema detectors over the resulting store.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import motion, schemas, spatial
from .core import (
    Box2,
    EntityInfo,
    Fluent,
    Holding,
    Interval,
    NarrativeStore,
    Span,
    TimePoint,
    Track,
    span_contains,
)
from .errors import GeometryMissing, InputValidationError, SamplingGap
from .schemas import RouteGraph

log = logging.getLogger(__name__)

FactSet = frozenset[tuple[Fluent, str]]


@dataclass(frozen=True)
class FrameFacts:
    """All relation facts evaluable at one frame."""

    at: TimePoint
    facts: FactSet


@dataclass
class SceneConfig:
    """Which relations to evaluate and with what tolerances."""

    topology_pairs: list[tuple[str, str]] = field(default_factory=list)
    position_pairs: list[tuple[str, str]] = field(default_factory=list)
    distance_triples: list[tuple[str, str, str]] = field(default_factory=list)
    size_pairs: list[tuple[str, str]] = field(default_factory=list)
    move_pairs: list[tuple[str, str]] = field(default_factory=list)
    size_motion_entities: list[str] = field(default_factory=list)
    localize: dict[str, list[str]] = field(default_factory=dict)

    containment_pairs: list[tuple[str, str]] = field(default_factory=list)
    spg_trajectors: list[str] = field(default_factory=list)
    pg_trajectors: list[str] = field(default_factory=list)
    attraction: list[dict] = field(default_factory=list)

    eps_dist: float = 0.0
    eps_size: float = 0.05
    eps_depth: float = 0.5
    eps_motion: Optional[float] = None  # None: 1% of scene diagonal per second
    min_hold: int = 1  # frames
    y_down: bool = True
    max_gap: Fraction = Fraction(1, 2)
    occupancy_ratio_threshold: float = schemas.DEFAULT_OCCUPANCY_RATIO
    attraction_threshold: float = schemas.DEFAULT_ATTRACTION_THRESHOLD
    possessive_apostrophe: bool = False
    route_graph: Optional[RouteGraph] = None

    def __post_init__(self):
        if self.min_hold < 0:
            raise InputValidationError("min_hold must be >= 0 frames")


def _box_at(entity: str, t: TimePoint, tracks: dict[str, Track],
            regions: dict[str, Box2]) -> Optional[Box2]:
    if entity in regions:
        return regions[entity]
    track = tracks.get(entity)
    if track is None:
        return None
    obs = track.observation_at(t)
    return obs.box if obs is not None else None


def _obs_at(entity: str, t: TimePoint, tracks: dict[str, Track]):
    track = tracks.get(entity)
    return track.observation_at(t) if track is not None else None


def _point_at(entity: str, t: TimePoint, tracks: dict[str, Track],
              regions: dict[str, Box2]) -> Optional[tuple[float, float]]:
    if entity in regions:
        return regions[entity].centroid
    obs = _obs_at(entity, t, tracks)
    return obs.representative_point() if obs is not None else None


def scene_diagonal(tracks: dict[str, Track], regions: dict[str, Box2]) -> float:
    """Diagonal of the bounding box of everything observed in the scene."""
    xs: list[float] = []
    ys: list[float] = []
    for box in regions.values():
        xs.extend((box.xmin, box.xmax))
        ys.extend((box.ymin, box.ymax))
    for track in tracks.values():
        for obs in track.observations:
            if obs.box is not None:
                xs.extend((obs.box.xmin, obs.box.xmax))
                ys.extend((obs.box.ymin, obs.box.ymax))
            if obs.point is not None:
                xs.append(obs.point[0])
                ys.append(obs.point[1])
    if not xs:
        return 1.0
    return math.hypot(max(xs) - min(xs), max(ys) - min(ys)) or 1.0


def compute_frame_relations(tracks: dict[str, Track], regions: dict[str, Box2],
                            config: SceneConfig, t: TimePoint,
                            next_t: Optional[TimePoint] = None,
                            diag: Optional[float] = None) -> FrameFacts:
    """One fact per configured fluent evaluable at frame t.

    Motion families need the following frame (next_t); they are attributed
    to the window's start frame and omitted at the last frame. Fluents whose
    entities are unobserved at t are omitted.
    """
    facts: set[tuple[Fluent, str]] = set()

    for a, b in config.topology_pairs:
        box_a = _box_at(a, t, tracks, regions)
        box_b = _box_at(b, t, tracks, regions)
        if box_a is None or box_b is None:
            log.debug("gap: topology(%s,%s) unobserved at %s", a, b, t)
            continue
        facts.add((Fluent("topology", (a, b)), spatial.rcc8(box_a, box_b)))

    for a, b in config.position_pairs:
        obs_a = _obs_at(a, t, tracks)
        obs_b = _obs_at(b, t, tracks)
        if obs_a is None or obs_b is None or obs_a.box is None or obs_b.box is None:
            continue
        triple = spatial.relative_position(obs_a, obs_b, y_down=config.y_down,
                                           eps_depth=config.eps_depth)
        facts.add((Fluent("pos_v", (a, b)), triple.vertical))
        facts.add((Fluent("pos_h", (a, b)), triple.horizontal))
        if triple.depth is not None:
            facts.add((Fluent("pos_d", (a, b)), triple.depth))

    for p1, p2, p3 in config.distance_triples:
        points = [_point_at(e, t, tracks, regions) for e in (p1, p2, p3)]
        if any(p is None for p in points):
            continue
        relation = spatial.relative_distance(points[0], points[1], points[2],
                                             eps_dist=config.eps_dist)
        facts.add((Fluent("rel_distance", (p1, p2, p3)), relation))

    for a, b in config.size_pairs:
        box_a = _box_at(a, t, tracks, regions)
        box_b = _box_at(b, t, tracks, regions)
        if box_a is None or box_b is None:
            continue
        facts.add((Fluent("rel_size", (a, b)),
                   spatial.relative_size(box_a, box_b, eps_size=config.eps_size)))

    if next_t is not None:
        window = (t, next_t)
        duration = float(next_t.t - t.t)
        if config.eps_motion is not None:
            eps = config.eps_motion
        else:
            eps = motion.default_eps_motion(diag or 1.0, duration)

        for a, b in config.move_pairs:
            track_a, track_b = tracks.get(a), tracks.get(b)
            if track_a is None or track_b is None:
                continue
            try:
                relation = motion.movement(track_a, track_b, window, eps,
                                           max_gap=config.max_gap)
            except (SamplingGap, GeometryMissing):
                continue
            facts.add((Fluent("move", (a, b)), relation))

        for entity in config.size_motion_entities:
            track = tracks.get(entity)
            if track is None:
                continue
            for axis, family in (("horizontal", "size_motion_h"),
                                 ("vertical", "size_motion_v")):
                try:
                    relation = motion.size_motion(track, axis, window, eps)
                except GeometryMissing:
                    continue
                facts.add((Fluent(family, (entity,)), relation))

    return FrameFacts(at=t, facts=frozenset(facts))


def maximal_intervals(frames: Sequence[FrameFacts], min_hold: int = 1) -> list[Holding]:
    """Maximal runs of consecutive frames sharing a (fluent, relation) fact.

    min_hold counts frames: runs spanning fewer frames are dropped.
    Single-frame survivors become time-point holdings.
    """
    frames = sorted(frames, key=lambda f: f.at)
    open_runs: dict[tuple[Fluent, str], int] = {}
    closed: list[tuple[tuple[Fluent, str], int, int]] = []
    for i, frame in enumerate(frames):
        for key in list(open_runs):
            if key not in frame.facts:
                closed.append((key, open_runs.pop(key), i - 1))
        for key in frame.facts:
            open_runs.setdefault(key, i)
    last = len(frames) - 1
    for key, start in open_runs.items():
        closed.append((key, start, last))

    holdings = []
    threshold = max(min_hold, 1)
    for (fluent, relation), i0, i1 in closed:
        if i1 - i0 + 1 < threshold:
            continue
        if i0 == i1:
            span: Span = frames[i0].at
        else:
            span = Interval(frames[i0].at, frames[i1].at)
        holdings.append(Holding(fluent, relation, span))
    holdings.sort(key=lambda h: h.sort_key())
    return holdings


def expand_holdings(holdings: Sequence[Holding],
                    frame_times: Sequence[TimePoint]) -> list[FrameFacts]:
    """Inverse of maximal_intervals over a known frame grid (for min_hold<=1)."""
    out = []
    for t in sorted(frame_times):
        facts = frozenset(
            (h.fluent, h.relation) for h in holdings if span_contains(h.span, t)
        )
        out.append(FrameFacts(at=t, facts=facts))
    return out


def build_narrative(tracks: dict[str, Track], regions: dict[str, Box2],
                    config: SceneConfig) -> NarrativeStore:
    """Full grounding pass: frame relations, maximal holdings, detectors."""
    store = NarrativeStore()
    for entity_id, track in sorted(tracks.items()):
        store.register_entity(EntityInfo(entity_id=entity_id, kind=track.kind,
                                         track=track))
    for name, box in sorted(regions.items()):
        store.register_entity(EntityInfo(entity_id=name, kind="region", region=box))

    grid = sorted({t for track in tracks.values() for t in track.times})
    diag = scene_diagonal(tracks, regions)
    frames = []
    for i, t in enumerate(grid):
        next_t = grid[i + 1] if i + 1 < len(grid) else None
        frames.append(compute_frame_relations(tracks, regions, config, t,
                                              next_t=next_t, diag=diag))

    for holding in maximal_intervals(frames, config.min_hold):
        store.insert(holding)

    for entity, region_names in sorted(config.localize.items()):
        track = tracks.get(entity)
        if track is None:
            raise InputValidationError(f"localize entity {entity!r} has no track")
        subset = {}
        for name in region_names:
            if name not in regions:
                raise InputValidationError(f"localize region {name!r} not defined")
            subset[name] = regions[name]
        for holding in schemas.localize(track, subset):
            store.insert(holding)

    occurrences = []
    for entity, container in config.containment_pairs:
        occurrences.extend(
            occ.as_occurrence()
            for occ in schemas.detect_containment(
                store, entity, container,
                occupancy_ratio_threshold=config.occupancy_ratio_threshold)
        )
    for trajector in config.spg_trajectors:
        occurrences.extend(
            occ.as_occurrence()
            for occ in schemas.detect_source_path_goal(store, trajector,
                                                       config.route_graph)
        )
    for trajector in config.pg_trajectors:
        occurrences.extend(
            occ.as_occurrence()
            for occ in schemas.detect_path_goal(store, trajector, config.route_graph)
        )
    for spec in config.attraction:
        entity = spec["entity"]
        attractor_regions = {name: regions[name] for name in spec["regions"]}
        threshold = spec.get("threshold", config.attraction_threshold)
        occurrences.extend(
            occ.as_occurrence()
            for occ in schemas.detect_attraction(store, entity, attractor_regions,
                                                 attraction_threshold=threshold)
        )
    store.add_occurrences(occurrences)
    return store.freeze()
