"""Context-free grammar over lexical categories, loaded from a data file.

Right-hand-side atoms:
  NAME        a nonterminal (conventionally uppercase)
  cat:X       any token of lexical category X (noun, verb, poss, ...)
  lex:K       any inflected form of the lexicon entry with key K
  lit:W       the exact token W (function words and punctuation)

Sentence-level rules carry the event kind they realise and a sentence class
(simple / compound / complex). The grammar must be epsilon-free and free of
unit-production cycles so that parsing terminates with a finite parse set.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from ..errors import GrammarGap, InputValidationError
from .tree import Leaf, Node, TreePart

SENTENCE_CLASSES = frozenset({"simple", "compound", "complex"})


@dataclass(frozen=True)
class GrammarRule:
    lhs: str
    rhs: tuple[str, ...]
    sentence_class: Optional[str] = None
    event: Optional[str] = None
    index: int = 0

    def __str__(self):
        return f"{self.lhs} -> {' '.join(self.rhs)}"


def is_terminal_atom(atom: str) -> bool:
    return atom.startswith(("cat:", "lex:", "lit:"))


def atom_matches(atom: str, leaf: Leaf) -> bool:
    kind, _, value = atom.partition(":")
    if kind == "cat":
        return leaf.category == value
    if kind == "lex":
        return leaf.key == value
    if kind == "lit":
        return leaf.key is None and leaf.surface == value
    return False


class Grammar:
    def __init__(self, start: str, rules: list[GrammarRule]):
        self.start = start
        self.rules = rules
        self.by_lhs: dict[str, list[GrammarRule]] = {}
        for rule in rules:
            self.by_lhs.setdefault(rule.lhs, []).append(rule)
        self._validate()

    def _validate(self):
        if self.start not in self.by_lhs:
            raise InputValidationError(f"start symbol {self.start!r} has no rules")
        for rule in self.rules:
            if not rule.rhs:
                raise InputValidationError(f"empty right-hand side in {rule}")
            for atom in rule.rhs:
                if not is_terminal_atom(atom) and atom not in self.by_lhs:
                    raise InputValidationError(
                        f"rule {rule}: nonterminal {atom!r} has no rules"
                    )
        # reject unit-production cycles (A -> B, B -> A): they admit
        # infinitely many parses for one token span
        unit_edges = {
            rule.lhs: set()
            for rule in self.rules
        }
        for rule in self.rules:
            if len(rule.rhs) == 1 and not is_terminal_atom(rule.rhs[0]):
                unit_edges[rule.lhs].add(rule.rhs[0])

        def reaches(origin: str, target: str, seen: set) -> bool:
            for nxt in unit_edges.get(origin, ()):
                if nxt == target:
                    return True
                if nxt not in seen:
                    seen.add(nxt)
                    if reaches(nxt, target, seen):
                        return True
            return False

        for symbol in unit_edges:
            if reaches(symbol, symbol, set()):
                raise InputValidationError(
                    f"unit-production cycle through {symbol!r}"
                )

    def sentence_rules(self, event: str) -> list[GrammarRule]:
        return [r for r in self.by_lhs.get(self.start, []) if r.event == event]

    def literals(self) -> set[str]:
        out = set()
        for rule in self.rules:
            for atom in rule.rhs:
                if atom.startswith("lit:"):
                    out.add(atom[4:])
        return out

    def license(self, label: str, children: tuple[TreePart, ...]) -> GrammarRule:
        """The rule justifying a node, or GrammarGap if none does."""
        for rule in self.by_lhs.get(label, []):
            if len(rule.rhs) != len(children):
                continue
            ok = True
            for atom, child in zip(rule.rhs, children):
                if isinstance(child, Node):
                    if atom != child.label:
                        ok = False
                        break
                elif not (is_terminal_atom(atom) and atom_matches(atom, child)):
                    ok = False
                    break
            if ok:
                return rule
        shapes = [
            child.label if isinstance(child, Node) else f"{child.category}:{child.surface}"
            for child in children
        ]
        raise GrammarGap(f"no rule licenses {label} -> {' '.join(shapes)}")

    def node(self, label: str, children) -> Node:
        """Build a node and check it against the rule inventory."""
        node = Node(label=label, children=tuple(children))
        self.license(label, node.children)
        return node


def load_grammar(path) -> Grammar:
    path = Path(path)
    try:
        payload = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise InputValidationError(f"invalid JSON: {exc}", filename=str(path))
    if payload.get("schema") != "grammar":
        raise InputValidationError("expected schema 'grammar'", filename=str(path))
    rules = []
    for i, raw in enumerate(payload.get("rules", [])):
        sentence_class = raw.get("class")
        if sentence_class is not None and sentence_class not in SENTENCE_CLASSES:
            raise InputValidationError(
                f"rule #{i}: bad sentence class {sentence_class!r}",
                filename=str(path),
            )
        rules.append(
            GrammarRule(
                lhs=raw["lhs"],
                rhs=tuple(raw["rhs"]),
                sentence_class=sentence_class,
                event=raw.get("event"),
                index=i,
            )
        )
    return Grammar(start=payload.get("start", "S"), rules=rules)
