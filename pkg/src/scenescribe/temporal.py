"""Allen interval algebra: the 13 relations, converses, and composition.

Composition entries were frozen from an exhaustive enumeration of integer
intervals (endpoints 0..8), which realises every qualitative configuration
of three intervals; the test suite re-derives the table the same way and
compares all 169 entries.
"""

from __future__ import annotations

from .core import Interval, TimePoint

ALLEN_RELATIONS = (
    "before", "after", "during", "contains", "starts", "started_by",
    "finishes", "finished_by", "overlaps", "overlapped_by", "meets",
    "met_by", "equal",
)

POINT_RELATIONS = ("before", "after", "equals")

POINT_INTERVAL_RELATIONS = ("before", "starts", "during", "finishes", "after")

# Converse symbols for the interval-seen-from-the-point direction.
POINT_INTERVAL_CONVERSE = {
    "before": "after",
    "starts": "started_by",
    "during": "contains",
    "finishes": "finished_by",
    "after": "before",
}

_CONVERSE = {
    "before": "after",
    "after": "before",
    "during": "contains",
    "contains": "during",
    "starts": "started_by",
    "started_by": "starts",
    "finishes": "finished_by",
    "finished_by": "finishes",
    "overlaps": "overlapped_by",
    "overlapped_by": "overlaps",
    "meets": "met_by",
    "met_by": "meets",
    "equal": "equal",
}


def allen(i1: Interval, i2: Interval) -> str:
    """The unique Allen relation of i1 with respect to i2."""
    s1, e1 = i1.start, i1.end
    s2, e2 = i2.start, i2.end
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


def point_relation(t1: TimePoint, t2: TimePoint) -> str:
    if t1 < t2:
        return "before"
    if t1 > t2:
        return "after"
    return "equals"


def point_interval(t: TimePoint, i: Interval) -> str:
    """Relation of a time point to an interval (5-way)."""
    if t < i.start:
        return "before"
    if t == i.start:
        return "starts"
    if t < i.end:
        return "during"
    if t == i.end:
        return "finishes"
    return "after"


def converse(relation: str) -> str:
    return _CONVERSE[relation]


def compose_allen(r1: str, r2: str) -> frozenset[str]:
    """Standard Allen composition; `equal` is the identity."""
    return COMPOSITION_TABLE[(r1, r2)]


_COMPOSE_FROZEN = {
    ("before", "before"): "before",
    ("before", "after"): "before after during contains starts started_by finishes finished_by overlaps overlapped_by meets met_by equal",
    ("before", "during"): "before during starts overlaps meets",
    ("before", "contains"): "before",
    ("before", "starts"): "before",
    ("before", "started_by"): "before",
    ("before", "finishes"): "before during starts overlaps meets",
    ("before", "finished_by"): "before",
    ("before", "overlaps"): "before",
    ("before", "overlapped_by"): "before during starts overlaps meets",
    ("before", "meets"): "before",
    ("before", "met_by"): "before during starts overlaps meets",
    ("before", "equal"): "before",
    ("after", "before"): "before after during contains starts started_by finishes finished_by overlaps overlapped_by meets met_by equal",
    ("after", "after"): "after",
    ("after", "during"): "after during finishes overlapped_by met_by",
    ("after", "contains"): "after",
    ("after", "starts"): "after during finishes overlapped_by met_by",
    ("after", "started_by"): "after",
    ("after", "finishes"): "after",
    ("after", "finished_by"): "after",
    ("after", "overlaps"): "after during finishes overlapped_by met_by",
    ("after", "overlapped_by"): "after",
    ("after", "meets"): "after during finishes overlapped_by met_by",
    ("after", "met_by"): "after",
    ("after", "equal"): "after",
    ("during", "before"): "before",
    ("during", "after"): "after",
    ("during", "during"): "during",
    ("during", "contains"): "before after during contains starts started_by finishes finished_by overlaps overlapped_by meets met_by equal",
    ("during", "starts"): "during",
    ("during", "started_by"): "after during finishes overlapped_by met_by",
    ("during", "finishes"): "during",
    ("during", "finished_by"): "before during starts overlaps meets",
    ("during", "overlaps"): "before during starts overlaps meets",
    ("during", "overlapped_by"): "after during finishes overlapped_by met_by",
    ("during", "meets"): "before",
    ("during", "met_by"): "after",
    ("during", "equal"): "during",
    ("contains", "before"): "before contains finished_by overlaps meets",
    ("contains", "after"): "after contains started_by overlapped_by met_by",
    ("contains", "during"): "during contains starts started_by finishes finished_by overlaps overlapped_by equal",
    ("contains", "contains"): "contains",
    ("contains", "starts"): "contains finished_by overlaps",
    ("contains", "started_by"): "contains",
    ("contains", "finishes"): "contains started_by overlapped_by",
    ("contains", "finished_by"): "contains",
    ("contains", "overlaps"): "contains finished_by overlaps",
    ("contains", "overlapped_by"): "contains started_by overlapped_by",
    ("contains", "meets"): "contains finished_by overlaps",
    ("contains", "met_by"): "contains started_by overlapped_by",
    ("contains", "equal"): "contains",
    ("starts", "before"): "before",
    ("starts", "after"): "after",
    ("starts", "during"): "during",
    ("starts", "contains"): "before contains finished_by overlaps meets",
    ("starts", "starts"): "starts",
    ("starts", "started_by"): "starts started_by equal",
    ("starts", "finishes"): "during",
    ("starts", "finished_by"): "before overlaps meets",
    ("starts", "overlaps"): "before overlaps meets",
    ("starts", "overlapped_by"): "during finishes overlapped_by",
    ("starts", "meets"): "before",
    ("starts", "met_by"): "met_by",
    ("starts", "equal"): "starts",
    ("started_by", "before"): "before contains finished_by overlaps meets",
    ("started_by", "after"): "after",
    ("started_by", "during"): "during finishes overlapped_by",
    ("started_by", "contains"): "contains",
    ("started_by", "starts"): "starts started_by equal",
    ("started_by", "started_by"): "started_by",
    ("started_by", "finishes"): "overlapped_by",
    ("started_by", "finished_by"): "contains",
    ("started_by", "overlaps"): "contains finished_by overlaps",
    ("started_by", "overlapped_by"): "overlapped_by",
    ("started_by", "meets"): "contains finished_by overlaps",
    ("started_by", "met_by"): "met_by",
    ("started_by", "equal"): "started_by",
    ("finishes", "before"): "before",
    ("finishes", "after"): "after",
    ("finishes", "during"): "during",
    ("finishes", "contains"): "after contains started_by overlapped_by met_by",
    ("finishes", "starts"): "during",
    ("finishes", "started_by"): "after overlapped_by met_by",
    ("finishes", "finishes"): "finishes",
    ("finishes", "finished_by"): "finishes finished_by equal",
    ("finishes", "overlaps"): "during starts overlaps",
    ("finishes", "overlapped_by"): "after overlapped_by met_by",
    ("finishes", "meets"): "meets",
    ("finishes", "met_by"): "after",
    ("finishes", "equal"): "finishes",
    ("finished_by", "before"): "before",
    ("finished_by", "after"): "after contains started_by overlapped_by met_by",
    ("finished_by", "during"): "during starts overlaps",
    ("finished_by", "contains"): "contains",
    ("finished_by", "starts"): "overlaps",
    ("finished_by", "started_by"): "contains",
    ("finished_by", "finishes"): "finishes finished_by equal",
    ("finished_by", "finished_by"): "finished_by",
    ("finished_by", "overlaps"): "overlaps",
    ("finished_by", "overlapped_by"): "contains started_by overlapped_by",
    ("finished_by", "meets"): "meets",
    ("finished_by", "met_by"): "contains started_by overlapped_by",
    ("finished_by", "equal"): "finished_by",
    ("overlaps", "before"): "before",
    ("overlaps", "after"): "after contains started_by overlapped_by met_by",
    ("overlaps", "during"): "during starts overlaps",
    ("overlaps", "contains"): "before contains finished_by overlaps meets",
    ("overlaps", "starts"): "overlaps",
    ("overlaps", "started_by"): "contains finished_by overlaps",
    ("overlaps", "finishes"): "during starts overlaps",
    ("overlaps", "finished_by"): "before overlaps meets",
    ("overlaps", "overlaps"): "before overlaps meets",
    ("overlaps", "overlapped_by"): "during contains starts started_by finishes finished_by overlaps overlapped_by equal",
    ("overlaps", "meets"): "before",
    ("overlaps", "met_by"): "contains started_by overlapped_by",
    ("overlaps", "equal"): "overlaps",
    ("overlapped_by", "before"): "before contains finished_by overlaps meets",
    ("overlapped_by", "after"): "after",
    ("overlapped_by", "during"): "during finishes overlapped_by",
    ("overlapped_by", "contains"): "after contains started_by overlapped_by met_by",
    ("overlapped_by", "starts"): "during finishes overlapped_by",
    ("overlapped_by", "started_by"): "after overlapped_by met_by",
    ("overlapped_by", "finishes"): "overlapped_by",
    ("overlapped_by", "finished_by"): "contains started_by overlapped_by",
    ("overlapped_by", "overlaps"): "during contains starts started_by finishes finished_by overlaps overlapped_by equal",
    ("overlapped_by", "overlapped_by"): "after overlapped_by met_by",
    ("overlapped_by", "meets"): "contains finished_by overlaps",
    ("overlapped_by", "met_by"): "after",
    ("overlapped_by", "equal"): "overlapped_by",
    ("meets", "before"): "before",
    ("meets", "after"): "after contains started_by overlapped_by met_by",
    ("meets", "during"): "during starts overlaps",
    ("meets", "contains"): "before",
    ("meets", "starts"): "meets",
    ("meets", "started_by"): "meets",
    ("meets", "finishes"): "during starts overlaps",
    ("meets", "finished_by"): "before",
    ("meets", "overlaps"): "before",
    ("meets", "overlapped_by"): "during starts overlaps",
    ("meets", "meets"): "before",
    ("meets", "met_by"): "finishes finished_by equal",
    ("meets", "equal"): "meets",
    ("met_by", "before"): "before contains finished_by overlaps meets",
    ("met_by", "after"): "after",
    ("met_by", "during"): "during finishes overlapped_by",
    ("met_by", "contains"): "after",
    ("met_by", "starts"): "during finishes overlapped_by",
    ("met_by", "started_by"): "after",
    ("met_by", "finishes"): "met_by",
    ("met_by", "finished_by"): "met_by",
    ("met_by", "overlaps"): "during finishes overlapped_by",
    ("met_by", "overlapped_by"): "after",
    ("met_by", "meets"): "starts started_by equal",
    ("met_by", "met_by"): "after",
    ("met_by", "equal"): "met_by",
    ("equal", "before"): "before",
    ("equal", "after"): "after",
    ("equal", "during"): "during",
    ("equal", "contains"): "contains",
    ("equal", "starts"): "starts",
    ("equal", "started_by"): "started_by",
    ("equal", "finishes"): "finishes",
    ("equal", "finished_by"): "finished_by",
    ("equal", "overlaps"): "overlaps",
    ("equal", "overlapped_by"): "overlapped_by",
    ("equal", "meets"): "meets",
    ("equal", "met_by"): "met_by",
    ("equal", "equal"): "equal",
}

COMPOSITION_TABLE = {
    key: frozenset(value.split()) for key, value in _COMPOSE_FROZEN.items()
}
