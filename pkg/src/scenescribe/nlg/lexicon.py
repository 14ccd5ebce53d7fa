"""Lexicon: surface forms, parts of speech, and inflection tables.

The lexicon is a data file (JSON), not code; entries map stable keys used
by the vocabulary to surface material. Verb inflection falls back to the
regular rules in `morphology` unless an entry carries irregular forms.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from ..errors import InputValidationError, LexiconGap
from . import morphology

PARTS_OF_SPEECH = frozenset(
    {"noun", "proper_noun", "verb", "preposition", "determiner", "adjective"}
)

VERB_FORMS = ("base", "present", "past", "ing", "participle")


@dataclass(frozen=True)
class LexiconEntry:
    key: str
    pos: str
    base: str
    number: str = "singular"  # nouns: singular | plural
    possessor: Optional[str] = None  # key of the owning proper noun
    irregular: tuple[tuple[str, str], ...] = ()
    tags: tuple[str, ...] = ()

    def __post_init__(self):
        if self.pos not in PARTS_OF_SPEECH:
            raise InputValidationError(f"entry {self.key!r}: bad pos {self.pos!r}")
        if not self.base:
            raise InputValidationError(f"entry {self.key!r}: empty base form")

    def irregular_form(self, slot: str) -> Optional[str]:
        for name, surface in self.irregular:
            if name == slot:
                return surface
        return None


class Lexicon:
    def __init__(self, entries: list[LexiconEntry]):
        self.entries: dict[str, LexiconEntry] = {}
        for entry in entries:
            if entry.key in self.entries:
                raise InputValidationError(f"duplicate lexicon key {entry.key!r}")
            self.entries[entry.key] = entry

    def __contains__(self, key: str) -> bool:
        return key in self.entries

    def get(self, key: str) -> LexiconEntry:
        entry = self.entries.get(key)
        if entry is None:
            raise LexiconGap(f"no lexicon entry for key {key!r}")
        return entry

    def verb_form(self, key: str, form: str, number: str = "singular") -> str:
        """Inflected surface of a verb for the given slot and subject number."""
        entry = self.get(key)
        if entry.pos != "verb":
            raise LexiconGap(f"{key!r} is not a verb")
        if form == "base":
            return entry.irregular_form("base") or entry.base
        if form == "present":
            if number == "plural":
                return entry.irregular_form("present_plur") or entry.base
            return entry.irregular_form("present_3sg") or morphology.third_singular(entry.base)
        if form == "past":
            slot = "past_plur" if number == "plural" else "past"
            irregular = entry.irregular_form(slot) or entry.irregular_form("past")
            return irregular or morphology.past_tense(entry.base)
        if form == "ing":
            return entry.irregular_form("ing") or morphology.present_participle(entry.base)
        if form == "participle":
            irregular = entry.irregular_form("participle") or entry.irregular_form("past")
            return irregular or morphology.past_tense(entry.base)
        raise ValueError(f"unknown verb form {form!r}")

    def possessive(self, key: str, apostrophe: bool = False) -> str:
        """Possessive surface of a proper noun (default: bare, "Barbaras")."""
        entry = self.get(key)
        if entry.pos != "proper_noun":
            raise LexiconGap(f"possessor {key!r} must be a proper noun")
        return entry.base + ("'s" if apostrophe else "s")

    def token_table(self) -> dict[str, list[tuple[str, str]]]:
        """Surface form -> [(category, key)] for tokenization and parsing."""
        table: dict[str, list[tuple[str, str]]] = {}

        def add(surface: str, category: str, key: str):
            entries = table.setdefault(surface, [])
            if (category, key) not in entries:
                entries.append((category, key))

        for key, entry in sorted(self.entries.items()):
            if entry.pos == "verb":
                for number in ("singular", "plural"):
                    for form in VERB_FORMS:
                        add(self.verb_form(key, form, number), "verb", key)
            else:
                add(entry.base, entry.pos, key)
                if entry.pos == "proper_noun":
                    add(self.possessive(key, apostrophe=False), "poss", key)
                    add(self.possessive(key, apostrophe=True), "poss", key)
        return table


def load_lexicon(path) -> Lexicon:
    path = Path(path)
    try:
        payload = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise InputValidationError(f"invalid JSON: {exc}", filename=str(path))
    if payload.get("schema") != "lexicon":
        raise InputValidationError("expected schema 'lexicon'", filename=str(path))
    entries = []
    for i, raw in enumerate(payload.get("entries", [])):
        try:
            entries.append(
                LexiconEntry(
                    key=raw["key"],
                    pos=raw["pos"],
                    base=raw["base"],
                    number=raw.get("number", "singular"),
                    possessor=raw.get("possessor"),
                    irregular=tuple(sorted(raw.get("irregular", {}).items())),
                    tags=tuple(raw.get("tags", [])),
                )
            )
        except KeyError as exc:
            raise InputValidationError(
                f"entry #{i} missing field {exc}", filename=str(path)
            )
    return Lexicon(entries)
