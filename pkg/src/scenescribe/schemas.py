"""Schema detectors over a narrative store: containment, paths, attraction.

Detectors are read-only over the store and return typed occurrence records;
the builder merges them (sorted by span start) into the store.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .core import (
    Box2,
    Fluent,
    Holding,
    Interval,
    NarrativeStore,
    Occurrence,
    Span,
    TimePoint,
    Track,
    span_contains,
    span_end,
    span_start,
)
from .errors import AmbiguousLocation

CONTAINMENT_TOPOLOGIES = frozenset({"tpp", "ntpp", "eq"})

DEFAULT_OCCUPANCY_RATIO = 0.6
DEFAULT_ATTRACTION_THRESHOLD = 2.0  # seconds


@dataclass(frozen=True)
class RouteGraph:
    """Named locations (each bound to a region name) and undirected adjacency."""

    nodes: dict[str, str]  # location name -> region name
    edges: frozenset[frozenset[str]]

    @staticmethod
    def build(nodes: dict[str, str], edges: Iterable[tuple[str, str]]) -> "RouteGraph":
        edge_set = set()
        for a, b in edges:
            if a not in nodes or b not in nodes:
                raise ValueError(f"route edge ({a},{b}) references unknown node")
            edge_set.add(frozenset((a, b)))
        return RouteGraph(nodes=dict(nodes), edges=frozenset(edge_set))

    def adjacent(self, a: str, b: str) -> bool:
        return frozenset((a, b)) in self.edges


@dataclass(frozen=True)
class ContainmentOccurrence:
    entity: str
    container: str
    span: Span
    lexical_variant: str  # "in" | "occupies"

    def as_occurrence(self) -> Occurrence:
        return Occurrence.build(
            "containment",
            {"entity": self.entity, "container": self.container,
             "lexical_variant": self.lexical_variant},
            self.span,
        )


@dataclass(frozen=True)
class SourcePathGoalOccurrence:
    trajector: str
    source: str
    goal: str
    via: tuple[str, ...]
    span: Span
    trajector_kind: str  # "person" | "gaze"

    def __post_init__(self):
        if self.source in self.via or self.goal in self.via:
            raise ValueError("via must exclude source and goal")

    def as_occurrence(self) -> Occurrence:
        return Occurrence.build(
            "source_path_goal",
            {"trajector": self.trajector, "source": self.source,
             "goal": self.goal, "via": self.via,
             "trajector_kind": self.trajector_kind},
            self.span,
        )


@dataclass(frozen=True)
class PathGoalOccurrence:
    trajector: str
    goal: str
    span: Span
    trajector_kind: str

    def as_occurrence(self) -> Occurrence:
        return Occurrence.build(
            "path_goal",
            {"trajector": self.trajector, "goal": self.goal,
             "trajector_kind": self.trajector_kind},
            self.span,
        )


@dataclass(frozen=True)
class AttractionOccurrence:
    entity: str  # the gaze/attention track
    attractor: str
    span: Span
    dwell: Fraction

    def as_occurrence(self) -> Occurrence:
        return Occurrence.build(
            "attraction",
            {"entity": self.entity, "attractor": self.attractor, "dwell": self.dwell},
            self.span,
        )


def _region_of(point: tuple[float, float], regions: dict[str, Box2],
               at: TimePoint) -> Optional[str]:
    hits = [name for name, box in regions.items() if box.contains_point(*point)]
    if len(hits) > 1:
        raise AmbiguousLocation(
            f"point {point} at {at} falls in regions {sorted(hits)}"
        )
    return hits[0] if hits else None


def localize(track: Track, regions: dict[str, Box2]) -> list[Holding]:
    """Location-membership timeline: maximal at_location holdings.

    A track is at a location while its representative point is inside the
    location's region; observations in no region produce no fact and break
    runs. Regions must be pairwise interior-disjoint.
    """
    holdings: list[Holding] = []
    run_loc: Optional[str] = None
    run_start: Optional[TimePoint] = None
    run_end: Optional[TimePoint] = None

    def close_run():
        if run_loc is None:
            return
        span: Span = run_start if run_start == run_end else Interval(run_start, run_end)
        fluent = Fluent("at_location", (track.entity_id, run_loc))
        holdings.append(Holding(fluent, "in", span))

    for obs in track.observations:
        loc = _region_of(obs.representative_point(), regions, obs.at)
        if loc == run_loc and loc is not None:
            run_end = obs.at
            continue
        close_run()
        run_loc = loc
        run_start = obs.at
        run_end = obs.at
    close_run()
    return holdings


def _entity_box(store: NarrativeStore, entity: str, at: TimePoint) -> Optional[Box2]:
    info = store.entities.get(entity)
    if info is None:
        return None
    if info.region is not None:
        return info.region
    if info.track is not None:
        obs = info.track.observation_at(at)
        return obs.box if obs is not None else None
    return None


def _frames_within(store: NarrativeStore, entity: str, span: Span) -> list[TimePoint]:
    info = store.entities.get(entity)
    if info is None or info.track is None:
        return []
    return [t for t in info.track.times if span_contains(span, t)]


def detect_containment(store: NarrativeStore, entity: str, container: str,
                       occupancy_ratio_threshold: float = DEFAULT_OCCUPANCY_RATIO,
                       ) -> list[ContainmentOccurrence]:
    """One occurrence per maximal containment holding of entity in container.

    The wording variant is "occupies" when the entity's box fills at least
    occupancy_ratio_threshold of the container's area throughout the span,
    otherwise "in".
    """
    occurrences = []
    for holding in store.query_holds(name="topology", args=(entity, container)):
        if holding.relation not in CONTAINMENT_TOPOLOGIES:
            continue
        occupies = True
        for t in _frames_within(store, entity, holding.span):
            ebox = _entity_box(store, entity, t)
            cbox = _entity_box(store, container, t)
            if ebox is None or cbox is None:
                occupies = False
                break
            if ebox.area / cbox.area < occupancy_ratio_threshold:
                occupies = False
                break
        variant = "occupies" if occupies else "in"
        occurrences.append(
            ContainmentOccurrence(entity=entity, container=container,
                                  span=holding.span, lexical_variant=variant)
        )
    return occurrences


def _location_timeline(store: NarrativeStore, trajector: str) -> list[tuple[str, Span]]:
    holdings = store.query_holds(name="at_location", args=(trajector, None))
    holdings.sort(key=lambda h: h.sort_key())
    return [(h.fluent.args[1], h.span) for h in holdings]


def detect_source_path_goal(store: NarrativeStore, trajector: str,
                            route_graph: Optional[RouteGraph] = None,
                            ) -> list[SourcePathGoalOccurrence]:
    """Movement occurrences from the trajector's location timeline.

    A maximal ordered run of at least two location holdings becomes one
    occurrence (source, via..., goal). Person trajectors must move between
    route-adjacent locations; a non-adjacent jump splits the run. Gaze
    trajectors may jump freely (saccades).
    """
    info = store.entities.get(trajector)
    kind = "gaze" if info is not None and info.kind == "gaze" else "person"
    timeline = _location_timeline(store, trajector)
    runs: list[list[tuple[str, Span]]] = []
    current: list[tuple[str, Span]] = []
    for loc, span in timeline:
        if current:
            prev_loc = current[-1][0]
            split = (
                kind == "person"
                and route_graph is not None
                and not route_graph.adjacent(prev_loc, loc)
            )
            if split:
                runs.append(current)
                current = []
        current.append((loc, span))
    if current:
        runs.append(current)

    occurrences = []
    for run in runs:
        if len(run) < 2:
            continue
        locs = [loc for loc, _ in run]
        span = Interval(span_start(run[0][1]), span_end(run[-1][1]))
        occurrences.append(
            SourcePathGoalOccurrence(
                trajector=trajector, source=locs[0], goal=locs[-1],
                via=tuple(locs[1:-1]), span=span, trajector_kind=kind,
            )
        )
    return occurrences


def detect_path_goal(store: NarrativeStore, trajector: str,
                     route_graph: Optional[RouteGraph] = None,
                     ) -> list[PathGoalOccurrence]:
    """Source/path-suppressed projection of the source-path-goal occurrences."""
    return [
        PathGoalOccurrence(trajector=spg.trajector, goal=spg.goal,
                           span=spg.span, trajector_kind=spg.trajector_kind)
        for spg in detect_source_path_goal(store, trajector, route_graph)
    ]


def detect_attraction(store: NarrativeStore, gaze_entity: str,
                      attractor_regions: dict[str, Box2],
                      attraction_threshold: float = DEFAULT_ATTRACTION_THRESHOLD,
                      ) -> list[AttractionOccurrence]:
    """Dwell-based attraction: maximal gaze-in-region spans of enough duration."""
    info = store.entities.get(gaze_entity)
    if info is None or info.track is None:
        return []
    occurrences = []
    for holding in localize(info.track, attractor_regions):
        span = holding.span
        dwell = span.duration if isinstance(span, Interval) else Fraction(0)
        if dwell >= Fraction(str(attraction_threshold)):
            occurrences.append(
                AttractionOccurrence(entity=gaze_entity,
                                     attractor=holding.fluent.args[1],
                                     span=span, dwell=dwell)
            )
    return occurrences
