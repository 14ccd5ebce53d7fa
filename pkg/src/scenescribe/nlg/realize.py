"""From schema occurrences to interaction descriptions to syntax trees.

An IDSInstance is the structured input record for the generator: one event
kind, role fillers given as lexicon keys, a span plus requested tense, and
optional modifiers (a co-temporal "while" link to a second instance, or the
location being walked through). The field set is a reconstruction; see the
package README for the documented schema.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..core import (
    NarrativeStore,
    Occurrence,
    Span,
    span_end,
    span_start,
    spans_intersect,
)
from ..errors import GrammarGap, LexiconGap, VocabularyGap
from .grammar import Grammar
from .lexicon import Lexicon
from .tree import Leaf, Node

TENSES = (
    "simple_present", "simple_past", "simple_future",
    "continuous_present", "continuous_past", "continuous_future",
)

TENSE_ALIASES = {
    "present": "simple_present",
    "past": "simple_past",
    "future": "simple_future",
}


def normalize_tense(tense: str) -> str:
    tense = TENSE_ALIASES.get(tense, tense)
    if tense not in TENSES:
        raise ValueError(f"unknown tense {tense!r}; expected one of {TENSES}")
    return tense


@dataclass(frozen=True)
class IDSInstance:
    """Input record for one generated sentence."""

    event_kind: str
    roles: tuple[tuple[str, object], ...]  # sorted (role, lexicon key) pairs
    span: Span
    tense: str = "simple_present"
    while_link: Optional["IDSInstance"] = None  # compound co-temporal clause
    while_at: Optional[str] = None  # lexicon key of the walked-through location
    source_ids: tuple[str, ...] = ()

    @staticmethod
    def build(event_kind: str, roles: dict, span: Span, tense: str = "simple_present",
              while_link: Optional["IDSInstance"] = None,
              while_at: Optional[str] = None,
              source_ids: tuple[str, ...] = ()) -> "IDSInstance":
        return IDSInstance(
            event_kind=event_kind, roles=tuple(sorted(roles.items())), span=span,
            tense=normalize_tense(tense), while_link=while_link,
            while_at=while_at, source_ids=source_ids,
        )

    def role(self, name: str, default=None):
        for key, value in self.roles:
            if key == name:
                return value
        return default

    def with_tense(self, tense: str) -> "IDSInstance":
        tense = normalize_tense(tense)
        link = self.while_link.with_tense(tense) if self.while_link else None
        return IDSInstance(self.event_kind, self.roles, self.span, tense,
                           link, self.while_at, self.source_ids)

    def sort_key(self):
        return (span_start(self.span), span_end(self.span), self.event_kind,
                tuple((k, repr(v)) for k, v in self.roles))


def _map_key(vocab: dict[str, str], entity_id: str) -> str:
    key = vocab.get(entity_id)
    if key is None:
        raise VocabularyGap(f"no vocabulary key for entity {entity_id!r}")
    return key


def _walked_location(store: NarrativeStore, gaze_entity: str, span: Span) -> Optional[str]:
    """The location the gaze owner is walking through during the span.

    Picks the owner's at_location holding with the largest temporal overlap.
    """
    info = store.entities.get(gaze_entity)
    owner = info.owner if info is not None else None
    if owner is None:
        return None
    best = None
    best_overlap = None
    for holding in store.query_holds(name="at_location", args=(owner, None)):
        if not spans_intersect(holding.span, span):
            continue
        overlap = (min(span_end(holding.span), span_end(span)).t
                   - max(span_start(holding.span), span_start(span)).t)
        if best_overlap is None or overlap > best_overlap:
            best = holding.fluent.args[1]
            best_overlap = overlap
    return best


def schema_to_ids(occ: Occurrence, vocab: dict[str, str],
                  store: Optional[NarrativeStore] = None,
                  tense: str = "simple_present") -> IDSInstance:
    """Translate one schema occurrence into a generator input record."""
    tense = normalize_tense(tense)
    src = (occ.occ_id,) if occ.occ_id else ()
    if occ.kind == "containment":
        roles = {
            "entity": _map_key(vocab, occ.role("entity")),
            "container": _map_key(vocab, occ.role("container")),
            "variant": occ.role("lexical_variant"),
        }
        return IDSInstance.build("containment", roles, occ.span, tense, source_ids=src)
    if occ.kind == "source_path_goal":
        roles = {
            "trajector": _map_key(vocab, occ.role("trajector")),
            "source": _map_key(vocab, occ.role("source")),
            "goal": _map_key(vocab, occ.role("goal")),
            "via": tuple(_map_key(vocab, v) for v in occ.role("via")),
            "trajector_kind": occ.role("trajector_kind"),
        }
        return IDSInstance.build("source_path_goal", roles, occ.span, tense,
                                 source_ids=src)
    if occ.kind == "path_goal":
        roles = {
            "trajector": _map_key(vocab, occ.role("trajector")),
            "goal": _map_key(vocab, occ.role("goal")),
            "trajector_kind": occ.role("trajector_kind"),
        }
        return IDSInstance.build("path_goal", roles, occ.span, tense, source_ids=src)
    if occ.kind == "attraction":
        roles = {
            "entity": _map_key(vocab, occ.role("entity")),
            "attractor": _map_key(vocab, occ.role("attractor")),
        }
        while_at = None
        if store is not None:
            location = _walked_location(store, occ.role("entity"), occ.span)
            if location is not None:
                while_at = _map_key(vocab, location)
        return IDSInstance.build("attraction", roles, occ.span, tense,
                                 while_at=while_at, source_ids=src)
    raise ValueError(f"no IDS mapping for occurrence kind {occ.kind!r}")


def link_co_temporal(first: IDSInstance, second: IDSInstance) -> IDSInstance:
    """Join two containment instances into one compound while-linked record."""
    if first.event_kind != "containment" or second.event_kind != "containment":
        raise ValueError("while-links are defined for containment pairs")
    if not spans_intersect(first.span, second.span):
        raise ValueError("while-linked instances must overlap in time")
    return IDSInstance(first.event_kind, first.roles, first.span, first.tense,
                       while_link=second, while_at=first.while_at,
                       source_ids=first.source_ids + second.source_ids)


# -- tree construction -------------------------------------------------------


def _noun_phrase(grammar: Grammar, lexicon: Lexicon, key: str,
                 apostrophe: bool) -> tuple[Node, str]:
    """NP for a lexicon key; returns the node and the head's number."""
    entry = lexicon.get(key)
    if entry.pos == "proper_noun":
        node = grammar.node("NP", [Leaf("proper_noun", entry.base, key)])
        return node, entry.number
    if entry.pos != "noun":
        raise LexiconGap(f"{key!r} cannot head a noun phrase (pos={entry.pos})")
    head = Leaf("noun", entry.base, key)
    if entry.possessor is not None:
        poss = Leaf("poss", lexicon.possessive(entry.possessor, apostrophe),
                    entry.possessor)
        return grammar.node("NP", [poss, head]), entry.number
    determiner = lexicon.get("the")
    det = Leaf("determiner", determiner.base, "the")
    return grammar.node("NP", [det, head]), entry.number


def _possessed_phrase(grammar: Grammar, lexicon: Lexicon, owner_key: str,
                      noun_key: str, apostrophe: bool) -> tuple[Node, str]:
    entry = lexicon.get(noun_key)
    poss = Leaf("poss", lexicon.possessive(owner_key, apostrophe), owner_key)
    head = Leaf("noun", entry.base, noun_key)
    return grammar.node("NP", [poss, head]), entry.number


def _will() -> Leaf:
    return Leaf("lit", "will", None)


def _be(lexicon: Lexicon, form: str, number: str) -> Leaf:
    return Leaf("verb", lexicon.verb_form("be", form, number), "be")


def _verb(lexicon: Lexicon, key: str, form: str, number: str) -> Leaf:
    return Leaf("verb", lexicon.verb_form(key, form, number), key)


def _verb_group(grammar: Grammar, lexicon: Lexicon, verb_key: str, tense: str,
                number: str) -> Node:
    if tense == "simple_present":
        parts = [_verb(lexicon, verb_key, "present", number)]
    elif tense == "simple_past":
        parts = [_verb(lexicon, verb_key, "past", number)]
    elif tense == "simple_future":
        parts = [_will(), _verb(lexicon, verb_key, "base", number)]
    elif tense == "continuous_present":
        parts = [_be(lexicon, "present", number), _verb(lexicon, verb_key, "ing", number)]
    elif tense == "continuous_past":
        parts = [_be(lexicon, "past", number), _verb(lexicon, verb_key, "ing", number)]
    else:  # continuous_future
        parts = [_will(), _be(lexicon, "base", number),
                 _verb(lexicon, verb_key, "ing", number)]
    return grammar.node("VG", parts)


def _be_group(grammar: Grammar, lexicon: Lexicon, tense: str, number: str) -> Node:
    if tense == "simple_present":
        parts = [_be(lexicon, "present", number)]
    elif tense == "simple_past":
        parts = [_be(lexicon, "past", number)]
    elif tense == "simple_future":
        parts = [_will(), _be(lexicon, "base", number)]
    elif tense == "continuous_present":
        parts = [_be(lexicon, "present", number), _be(lexicon, "ing", number)]
    elif tense == "continuous_past":
        parts = [_be(lexicon, "past", number), _be(lexicon, "ing", number)]
    else:
        parts = [_will(), _be(lexicon, "base", number), _be(lexicon, "ing", number)]
    return grammar.node("VG_BE", parts)


def _passive_group(grammar: Grammar, lexicon: Lexicon, verb_key: str, tense: str,
                   number: str) -> Node:
    participle = _verb(lexicon, verb_key, "participle", number)
    if tense == "simple_present":
        parts = [_be(lexicon, "present", number), participle]
    elif tense == "simple_past":
        parts = [_be(lexicon, "past", number), participle]
    elif tense == "simple_future":
        parts = [_will(), _be(lexicon, "base", number), participle]
    elif tense == "continuous_present":
        parts = [_be(lexicon, "present", number), _be(lexicon, "ing", number), participle]
    elif tense == "continuous_past":
        parts = [_be(lexicon, "past", number), _be(lexicon, "ing", number), participle]
    else:
        parts = [_will(), _be(lexicon, "base", number), _be(lexicon, "ing", number),
                 participle]
    return grammar.node("VG_PASS", parts)


def _prep(lexicon: Lexicon, key: str) -> Leaf:
    entry = lexicon.get(key)
    if entry.pos != "preposition":
        raise LexiconGap(f"{key!r} is not a preposition")
    return Leaf("preposition", entry.base, key)


def _comma() -> Leaf:
    return Leaf("lit", ",", None)


def _containment_clause(grammar: Grammar, lexicon: Lexicon, ids: IDSInstance,
                        apostrophe: bool) -> Node:
    subject, number = _noun_phrase(grammar, lexicon, ids.role("entity"), apostrophe)
    container, _ = _noun_phrase(grammar, lexicon, ids.role("container"), apostrophe)
    variant = ids.role("variant")
    if variant == "occupies":
        verb_group = _verb_group(grammar, lexicon, "occupy", ids.tense, number)
        return grammar.node("CONTAIN_CLAUSE", [subject, verb_group, container])
    if variant == "in":
        be_group = _be_group(grammar, lexicon, ids.tense, number)
        phrase = grammar.node("PP_IN", [_prep(lexicon, "in"), container])
        return grammar.node("CONTAIN_CLAUSE", [subject, be_group, phrase])
    raise ValueError(f"unknown containment variant {variant!r}")


# verb and via-preposition depend on what is moving: a person walks through
# locations, eyes move over objects
_MOTION_LEXICALISATION = {
    "person": ("walk", "through"),
    "gaze": ("move", "over"),
}


def _via_list(grammar: Grammar, lexicon: Lexicon, via_keys, via_prep: str,
              apostrophe: bool) -> Node:
    head_key, rest = via_keys[0], via_keys[1:]
    np, _ = _noun_phrase(grammar, lexicon, head_key, apostrophe)
    phrase = grammar.node("VIA_PP", [_prep(lexicon, via_prep), np])
    if rest:
        tail = _via_list(grammar, lexicon, rest, via_prep, apostrophe)
        return grammar.node("VIA_LIST", [_comma(), phrase, tail])
    return grammar.node("VIA_LIST", [_comma(), phrase])


def _movement_clause(grammar: Grammar, lexicon: Lexicon, ids: IDSInstance,
                     apostrophe: bool) -> Node:
    kind = ids.role("trajector_kind", "person")
    verb_key, via_prep = _MOTION_LEXICALISATION.get(kind, _MOTION_LEXICALISATION["person"])
    subject, number = _noun_phrase(grammar, lexicon, ids.role("trajector"), apostrophe)
    verb_group = _verb_group(grammar, lexicon, verb_key, ids.tense, number)
    goal, _ = _noun_phrase(grammar, lexicon, ids.role("goal"), apostrophe)
    to_phrase = grammar.node("TO_PP", [_prep(lexicon, "to"), goal])
    if ids.event_kind == "path_goal":
        return grammar.node("GOAL_CLAUSE", [subject, verb_group, to_phrase])
    source, _ = _noun_phrase(grammar, lexicon, ids.role("source"), apostrophe)
    from_phrase = grammar.node("FROM_PP", [_prep(lexicon, "from"), source])
    via = ids.role("via") or ()
    if via:
        via_list = _via_list(grammar, lexicon, via, via_prep, apostrophe)
        children = [subject, verb_group, from_phrase, via_list, to_phrase]
    else:
        children = [subject, verb_group, from_phrase, to_phrase]
    return grammar.node("MOVE_CLAUSE", children)


def _attraction_clause(grammar: Grammar, lexicon: Lexicon, ids: IDSInstance,
                       apostrophe: bool) -> Node:
    gaze_entry = lexicon.get(ids.role("entity"))
    if gaze_entry.possessor is None:
        raise LexiconGap(
            f"gaze entry {gaze_entry.key!r} needs a possessor for attraction wording"
        )
    subject, number = _possessed_phrase(grammar, lexicon, gaze_entry.possessor,
                                        "attention", apostrophe)
    verb_group = _passive_group(grammar, lexicon, "attract", ids.tense, number)
    attractor, _ = _noun_phrase(grammar, lexicon, ids.role("attractor"), apostrophe)
    return grammar.node("ATTRACT_CLAUSE",
                        [subject, verb_group, _prep(lexicon, "by"), attractor])


def _while_part(grammar: Grammar, lexicon: Lexicon, location_key: str,
                apostrophe: bool) -> Node:
    walking = Leaf("verb", lexicon.verb_form("walk", "ing"), "walk")
    np, _ = _noun_phrase(grammar, lexicon, location_key, apostrophe)
    return grammar.node("WHILE_PART",
                        [Leaf("lit", "while", None), walking,
                         _prep(lexicon, "through"), np])


def realize(ids: IDSInstance, lexicon: Lexicon, grammar: Grammar,
            possessive_apostrophe: bool = False) -> Node:
    """Morphological and syntactic realisation of one IDS instance.

    Every node of the returned tree is licensed by a grammar rule, so the
    parser can recover the tree from the linearised sentence.
    """
    tense = normalize_tense(ids.tense)
    if tense != ids.tense:
        ids = ids.with_tense(tense)
    apostrophe = possessive_apostrophe

    if ids.event_kind == "containment":
        clause = _containment_clause(grammar, lexicon, ids, apostrophe)
        if ids.while_link is not None:
            second = _containment_clause(grammar, lexicon,
                                         ids.while_link.with_tense(ids.tense),
                                         apostrophe)
            return grammar.node("S", [clause, _comma(),
                                      Leaf("lit", "while", None), second])
        return grammar.node("S", [clause])
    if ids.event_kind in ("source_path_goal", "path_goal"):
        return grammar.node("S", [_movement_clause(grammar, lexicon, ids, apostrophe)])
    if ids.event_kind == "attraction":
        clause = _attraction_clause(grammar, lexicon, ids, apostrophe)
        if ids.while_at is not None:
            part = _while_part(grammar, lexicon, ids.while_at, apostrophe)
            return grammar.node("S", [part, _comma(), clause])
        return grammar.node("S", [clause])
    raise GrammarGap(f"no sentence pattern for event kind {ids.event_kind!r}")
