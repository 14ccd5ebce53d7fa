"""Lexicon-driven tokenizer and chart parser (sentence -> syntax trees)."""

from __future__ import annotations

from typing import Optional

from ..errors import ParseFailure, UnknownToken
from .grammar import Grammar, is_terminal_atom, atom_matches
from .lexicon import Lexicon
from .tree import Leaf, Node

_PUNCT_TOKENS = {",", ";"}


def _surface_table(lexicon: Lexicon, grammar: Grammar) -> dict[str, list[Leaf]]:
    table: dict[str, list[Leaf]] = {}
    for surface, entries in lexicon.token_table().items():
        table[surface] = [Leaf(category=c, surface=surface, key=k) for c, k in entries]
    for literal in grammar.literals():
        table.setdefault(literal, []).append(
            Leaf(category="lit", surface=literal, key=None)
        )
    return table


def tokenize(sentence: str, lexicon: Lexicon, grammar: Grammar) -> list[list[Leaf]]:
    """Greedy longest-match tokenization against known surface forms.

    Returns one candidate-leaf list per token (a surface form may belong to
    several lexical categories). The terminal period is consumed silently;
    any other unmatched chunk raises UnknownToken.
    """
    table = _surface_table(lexicon, grammar)
    surfaces = sorted(table, key=len, reverse=True)
    text = sentence.strip()
    if text.endswith("."):
        text = text[:-1].rstrip()

    tokens: list[list[Leaf]] = []
    pos = 0
    first_word = True
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        if text[pos] in _PUNCT_TOKENS:
            punct = text[pos]
            tokens.append([Leaf(category="lit", surface=punct, key=None)])
            pos += 1
            continue
        window = text[pos:]
        if first_word and window:
            # sentence-initial capitalisation: also try the lowercased form
            window_alt = window[0].lower() + window[1:]
        else:
            window_alt = window
        match: Optional[str] = None
        for surface in surfaces:
            for candidate_text in (window, window_alt):
                if candidate_text.startswith(surface):
                    after = candidate_text[len(surface):]
                    if after == "" or not (after[0].isalnum() or after[0] == "_"):
                        match = surface
                        break
            if match:
                break
        if match is None:
            chunk = window.split()[0] if window.split() else window
            raise UnknownToken(f"cannot match {chunk!r} against the lexicon")
        tokens.append(table[match])
        pos += len(match)
        first_word = False
    return tokens


def parse(sentence: str, grammar: Grammar, lexicon: Lexicon) -> list[Node]:
    """All parse trees of the sentence, in deterministic (rule-order) order.

    Raises UnknownToken for unmatchable chunks and ParseFailure when no
    derivation covers the whole token sequence.
    """
    candidates = tokenize(sentence, lexicon, grammar)
    n = len(candidates)
    if n == 0:
        raise ParseFailure("empty sentence")

    memo: dict[tuple[str, int, int], list[Node]] = {}

    def derive(label: str, i: int, j: int) -> list[Node]:
        key = (label, i, j)
        if key in memo:
            return memo[key]
        memo[key] = []  # cycle guard; grammar validation forbids real cycles
        results = []
        for rule in grammar.by_lhs.get(label, []):
            for children in _expand(rule.rhs, 0, i, j):
                results.append(Node(label=label, children=tuple(children)))
        memo[key] = results
        return results

    def _expand(rhs: tuple[str, ...], k: int, i: int, j: int) -> list[list]:
        if k == len(rhs):
            return [[]] if i == j else []
        remaining = len(rhs) - k - 1  # atoms after this one, each needs >= 1 token
        atom = rhs[k]
        out: list[list] = []
        if is_terminal_atom(atom):
            if i < j and (j - (i + 1)) >= remaining:
                for leaf in candidates[i]:
                    if atom_matches(atom, leaf):
                        for rest in _expand(rhs, k + 1, i + 1, j):
                            out.append([leaf] + rest)
        else:
            hi = j - remaining
            for mid in range(i + 1, hi + 1):
                subtrees = derive(atom, i, mid)
                if not subtrees:
                    continue
                rests = _expand(rhs, k + 1, mid, j)
                for sub in subtrees:
                    for rest in rests:
                        out.append([sub] + rest)
        return out

    trees = derive(grammar.start, 0, n)
    if not trees:
        raise ParseFailure(
            f"no derivation of {n} token(s) from {grammar.start!r}"
        )
    return trees
