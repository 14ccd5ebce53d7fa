"""Core domain model: time, geometry, fluents, and the narrative fact store.

Timestamps are exact rationals so that interval relations never depend on
float equality. Spans are either a TimePoint (a relation observed at a
single frame) or an Interval (a relation holding over a closed frame range
with strictly increasing endpoints).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .errors import DegenerateInterval, FamilyMismatch, GeometryMissing

TimeLike = Union[int, float, str, Fraction, "TimePoint"]


@dataclass(frozen=True, order=True)
class TimePoint:
    """A non-negative rational frame timestamp, in seconds."""

    t: Fraction

    def __post_init__(self):
        if not isinstance(self.t, Fraction):
            object.__setattr__(self, "t", _to_fraction(self.t))
        if self.t < 0:
            raise ValueError(f"timestamps must be non-negative, got {self.t}")

    def __str__(self):
        return str(self.t)


def _to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        # exact value of the printed decimal, not of the binary float
        return Fraction(Decimal(repr(value)))
    return Fraction(value)


def as_timepoint(value: TimeLike) -> TimePoint:
    if isinstance(value, TimePoint):
        return value
    return TimePoint(_to_fraction(value))


@dataclass(frozen=True, order=True)
class Interval:
    """A time interval with start strictly before end (closed at frames)."""

    start: TimePoint
    end: TimePoint

    def __post_init__(self):
        if self.start >= self.end:
            raise DegenerateInterval(
                f"interval needs start < end, got [{self.start}, {self.end}]"
            )

    @property
    def duration(self) -> Fraction:
        return self.end.t - self.start.t

    def __str__(self):
        return f"[{self.start},{self.end}]"


Span = Union[TimePoint, Interval]


def make_interval(start: TimeLike, end: TimeLike) -> Interval:
    """Build an interval from two timestamps; start must precede end."""
    return Interval(as_timepoint(start), as_timepoint(end))


def span_start(span: Span) -> TimePoint:
    return span.start if isinstance(span, Interval) else span


def span_end(span: Span) -> TimePoint:
    return span.end if isinstance(span, Interval) else span


def span_contains(span: Span, t: TimePoint) -> bool:
    """Closed containment of a time point in a span."""
    return span_start(span) <= t <= span_end(span)


def spans_intersect(a: Span, b: Span) -> bool:
    """Closed spans share at least one time point."""
    return span_start(a) <= span_end(b) and span_start(b) <= span_end(a)


def spans_touch_or_intersect(a: Span, b: Span) -> bool:
    """True when the spans overlap or share an endpoint (mergeable)."""
    return spans_intersect(a, b)


def merge_spans(a: Span, b: Span) -> Span:
    start = min(span_start(a), span_start(b))
    end = max(span_end(a), span_end(b))
    if start == end:
        return start
    return Interval(start, end)


@dataclass(frozen=True)
class Box2:
    """Axis-aligned rectangle in scene coordinates (pixels or metres)."""

    xmin: float
    xmax: float
    ymin: float
    ymax: float

    def __post_init__(self):
        if not (self.xmin < self.xmax and self.ymin < self.ymax):
            raise ValueError(
                f"degenerate box: x=[{self.xmin},{self.xmax}] y=[{self.ymin},{self.ymax}]"
            )

    @property
    def area(self) -> float:
        return (self.xmax - self.xmin) * (self.ymax - self.ymin)

    @property
    def centroid(self) -> tuple[float, float]:
        return ((self.xmin + self.xmax) / 2.0, (self.ymin + self.ymax) / 2.0)

    def x_extent(self) -> tuple[float, float]:
        return (self.xmin, self.xmax)

    def y_extent(self) -> tuple[float, float]:
        return (self.ymin, self.ymax)

    def contains_point(self, x: float, y: float) -> bool:
        return self.xmin <= x <= self.xmax and self.ymin <= y <= self.ymax


@dataclass(frozen=True)
class Observation:
    """One timestamped percept for an entity: box and/or point, optional depth."""

    at: TimePoint
    box: Optional[Box2] = None
    point: Optional[tuple[float, float]] = None
    depth: Optional[float] = None

    def __post_init__(self):
        if self.box is None and self.point is None:
            raise ValueError(f"observation at {self.at} has neither box nor point")
        if self.box is not None and self.point is not None:
            x, y = self.point
            if not self.box.contains_point(x, y):
                raise ValueError(
                    f"observation at {self.at}: point {self.point} outside box"
                )

    def representative_point(self) -> tuple[float, float]:
        """Point standing in for the entity: raw point, else box centroid."""
        if self.point is not None:
            return self.point
        return self.box.centroid


TRACK_KINDS = frozenset({"person", "object", "gaze", "camera"})


@dataclass(frozen=True)
class Track:
    """Time-ordered observations of one entity."""

    entity_id: str
    kind: str
    observations: tuple[Observation, ...]
    owner: Optional[str] = None  # owning person for gaze tracks

    def __post_init__(self):
        if self.kind not in TRACK_KINDS:
            raise ValueError(f"unknown track kind {self.kind!r}")
        if not self.observations:
            raise ValueError(f"track {self.entity_id} has no observations")
        times = [o.at for o in self.observations]
        if any(a >= b for a, b in zip(times, times[1:])):
            raise ValueError(f"track {self.entity_id}: timestamps not strictly increasing")

    @property
    def times(self) -> list[TimePoint]:
        return [o.at for o in self.observations]

    def observation_at(self, t: TimePoint) -> Optional[Observation]:
        for obs in self.observations:
            if obs.at == t:
                return obs
        return None

    def sample_point(self, t: TimePoint, max_gap: Fraction) -> tuple[float, float]:
        """Representative point at t, linearly interpolated across gaps <= max_gap.

        Raises SamplingGap when t falls outside the track or in a gap wider
        than max_gap.
        """
        from .errors import SamplingGap

        exact = self.observation_at(t)
        if exact is not None:
            return exact.representative_point()
        before = None
        after = None
        for obs in self.observations:
            if obs.at < t:
                before = obs
            elif obs.at > t:
                after = obs
                break
        if before is None or after is None:
            raise SamplingGap(f"track {self.entity_id}: {t} outside observed range")
        gap = after.at.t - before.at.t
        if gap > max_gap:
            raise SamplingGap(
                f"track {self.entity_id}: gap of {gap}s around {t} exceeds max_gap={max_gap}"
            )
        w = float((t.t - before.at.t) / gap)
        bx, by = before.representative_point()
        ax, ay = after.representative_point()
        return (bx + (ax - bx) * w, by + (ay - by) * w)


# Relation families. A Holding's relation symbol must belong to the family
# of its fluent. `at_location` is open: its symbols are region names.
RCC8_RELATIONS = frozenset({"dc", "ec", "po", "eq", "tpp", "ntpp", "tpp_i", "ntpp_i"})

POS_V_RELATIONS = frozenset(
    {"above", "overlaps_above", "along_above", "vertically_equal",
     "overlaps_below", "along_below", "below"}
)
POS_H_RELATIONS = frozenset(
    {"left", "overlaps_left", "along_left", "horizontally_equal",
     "overlaps_right", "along_right", "right"}
)
POS_D_RELATIONS = frozenset(
    {"closer", "overlaps_closer", "along_closer", "distance_equal",
     "overlaps_further", "along_further", "further"}
)
DIST_RELATIONS = frozenset({"closer", "further", "same"})
SIZE_RELATIONS = frozenset({"smaller", "bigger", "same"})
MOVE_RELATIONS = frozenset({"approaching", "receding", "static"})
SIZE_MOTION_RELATIONS = frozenset({"elongating", "shortening", "static"})

FLUENT_FAMILIES: dict[str, tuple[int, Optional[frozenset]]] = {
    # name -> (arity, allowed relations; None = open symbol set)
    "topology": (2, RCC8_RELATIONS),
    "pos_v": (2, POS_V_RELATIONS),
    "pos_h": (2, POS_H_RELATIONS),
    "pos_d": (2, POS_D_RELATIONS),
    "rel_distance": (3, DIST_RELATIONS),
    "rel_size": (2, SIZE_RELATIONS),
    "move": (2, MOVE_RELATIONS),
    "size_motion_h": (1, SIZE_MOTION_RELATIONS),
    "size_motion_v": (1, SIZE_MOTION_RELATIONS),
    "size_motion_d": (1, SIZE_MOTION_RELATIONS),
    "at_location": (2, frozenset({"in"})),
}


@dataclass(frozen=True, order=True)
class Fluent:
    """A relation family applied to ordered entity/region ids."""

    name: str
    args: tuple[str, ...]

    def __post_init__(self):
        family = FLUENT_FAMILIES.get(self.name)
        if family is None:
            raise FamilyMismatch(f"unknown fluent family {self.name!r}")
        arity, _ = family
        if len(self.args) != arity:
            raise FamilyMismatch(
                f"{self.name} takes {arity} argument(s), got {len(self.args)}"
            )

    def allows(self, relation: str) -> bool:
        _, allowed = FLUENT_FAMILIES[self.name]
        return allowed is None or relation in allowed

    def __str__(self):
        return f"{self.name}({','.join(self.args)})"


@dataclass(frozen=True)
class Holding:
    """A fluent holding one relation over a maximal span."""

    fluent: Fluent
    relation: str
    span: Span

    def __post_init__(self):
        if not self.fluent.allows(self.relation):
            raise FamilyMismatch(
                f"relation {self.relation!r} not in family of {self.fluent}"
            )

    def sort_key(self):
        return (span_start(self.span), span_end(self.span), self.fluent.name,
                self.fluent.args, self.relation)

    def __str__(self):
        at = f"at({self.span})" if isinstance(self.span, TimePoint) else f"between{self.span}"
        return f"holds({self.fluent}, {self.relation}, {at})"


@dataclass(frozen=True)
class Occurrence:
    """An event/schema instance with role bindings over a span."""

    kind: str
    roles: tuple[tuple[str, object], ...]  # sorted (role, value) pairs
    span: Span
    occ_id: str = ""

    @staticmethod
    def build(kind: str, roles: dict, span: Span, occ_id: str = "") -> "Occurrence":
        required = OCCURRENCE_ROLES.get(kind)
        if required is not None:
            missing = [r for r in required if r not in roles]
            if missing:
                raise ValueError(f"{kind} occurrence missing roles: {missing}")
        items = tuple(sorted(roles.items()))
        return Occurrence(kind=kind, roles=items, span=span, occ_id=occ_id)

    def role(self, name: str, default=None):
        for key, value in self.roles:
            if key == name:
                return value
        return default

    def sort_key(self):
        return (span_start(self.span), span_end(self.span), self.kind,
                tuple((k, repr(v)) for k, v in self.roles))


OCCURRENCE_ROLES = {
    "containment": ("entity", "container", "lexical_variant"),
    "source_path_goal": ("trajector", "source", "goal", "via", "trajector_kind"),
    "path_goal": ("trajector", "goal", "trajector_kind"),
    "attraction": ("entity", "attractor", "dwell"),
}


@dataclass(frozen=True)
class EntityInfo:
    """Registry entry: a tracked entity or a named static region."""

    entity_id: str
    kind: str  # person | object | gaze | camera | region
    track: Optional[Track] = None
    region: Optional[Box2] = None

    @property
    def owner(self) -> Optional[str]:
        return self.track.owner if self.track is not None else None


class NarrativeStore:
    """Queryable collection of Holdings and Occurrences for one scene.

    Built once via inserts, then frozen; all queries are read-only.
    """

    def __init__(self):
        self._holdings: dict[tuple[Fluent, str], list[Span]] = {}
        self.occurrences: list[Occurrence] = []
        self.entities: dict[str, EntityInfo] = {}
        self._frozen = False

    # -- construction ------------------------------------------------------

    def register_entity(self, info: EntityInfo):
        self._check_mutable()
        self.entities[info.entity_id] = info

    def insert(self, holding: Holding):
        """Insert a holding, re-establishing maximality for its fluent/relation.

        Overlapping or endpoint-touching spans of the same (fluent, relation)
        are merged into one.
        """
        self._check_mutable()
        for arg in holding.fluent.args:
            if arg not in self.entities:
                self.entities[arg] = EntityInfo(entity_id=arg, kind="object")
        key = (holding.fluent, holding.relation)
        spans = self._holdings.setdefault(key, [])
        span = holding.span
        merged = []
        for existing in spans:
            if spans_touch_or_intersect(existing, span):
                span = merge_spans(existing, span)
            else:
                merged.append(existing)
        merged.append(span)
        merged.sort(key=lambda s: (span_start(s), span_end(s)))
        self._holdings[key] = merged

    def add_occurrences(self, occurrences: Iterable[Occurrence]):
        self._check_mutable()
        self.occurrences.extend(occurrences)

    def freeze(self):
        """Assign stable occurrence ids and forbid further mutation."""
        self.occurrences.sort(key=lambda o: o.sort_key())
        self.occurrences = [
            Occurrence(o.kind, o.roles, o.span, occ_id=f"{o.kind}-{i:03d}")
            for i, o in enumerate(self.occurrences, start=1)
        ]
        self._frozen = True
        return self

    def _check_mutable(self):
        if self._frozen:
            raise RuntimeError("store is frozen; construction is single-phase")

    # -- queries -----------------------------------------------------------

    @property
    def holdings(self) -> list[Holding]:
        out = [
            Holding(fluent, relation, span)
            for (fluent, relation), spans in self._holdings.items()
            for span in spans
        ]
        out.sort(key=lambda h: h.sort_key())
        return out

    @property
    def timeline(self) -> Optional[tuple[TimePoint, TimePoint]]:
        starts = [span_start(s) for spans in self._holdings.values() for s in spans]
        ends = [span_end(s) for spans in self._holdings.values() for s in spans]
        for occ in self.occurrences:
            starts.append(span_start(occ.span))
            ends.append(span_end(occ.span))
        if not starts:
            return None
        return (min(starts), max(ends))

    def query_holds(
        self,
        name: Optional[str] = None,
        args: Optional[Sequence[Optional[str]]] = None,
        relation: Optional[str] = None,
        at: Optional[Span] = None,
    ) -> list[Holding]:
        """All holdings unifying with the partial fluent pattern.

        `args` entries of None (or "*") match anything. `at` keeps holdings
        whose span contains the time point / intersects the interval.
        Result order is deterministic: span start, fluent name, args.
        """
        results = []
        for holding in self.holdings:
            if name is not None and holding.fluent.name != name:
                continue
            if args is not None:
                if len(args) != len(holding.fluent.args):
                    continue
                if any(
                    want not in (None, "*") and want != got
                    for want, got in zip(args, holding.fluent.args)
                ):
                    continue
            if relation is not None and holding.relation != relation:
                continue
            if at is not None and not spans_intersect(holding.span, at):
                continue
            results.append(holding)
        return results


def euclidean(p: tuple[float, float], q: tuple[float, float]) -> float:
    return math.hypot(p[0] - q[0], p[1] - q[1])
