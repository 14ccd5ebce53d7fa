"""Syntax trees: the shared representation between realiser and parser."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Union

PUNCTUATION = {",", ".", ";", "!", "?"}


@dataclass(frozen=True)
class Leaf:
    """An inflected surface token; key is None for grammar literals."""

    category: str
    surface: str
    key: Optional[str] = None


@dataclass(frozen=True)
class Node:
    label: str
    children: tuple  # of Node | Leaf


SyntaxTree = Node
TreePart = Union[Node, Leaf]


def leaves(tree: TreePart) -> Iterator[Leaf]:
    if isinstance(tree, Leaf):
        yield tree
        return
    for child in tree.children:
        yield from leaves(child)


def linearize(tree: TreePart) -> str:
    """Surface sentence: spaced tokens, leading capital, terminal period.

    Punctuation tokens attach to the preceding word; a final period is added
    unless the tree already ends in sentence-final punctuation.
    """
    tokens = [leaf.surface for leaf in leaves(tree)]
    if not tokens:
        return ""
    out = tokens[0]
    for token in tokens[1:]:
        if token in PUNCTUATION:
            out += token
        else:
            out += " " + token
    out = out[0].upper() + out[1:]
    if out[-1] not in {".", "!", "?"}:
        out += "."
    return out


def tree_to_dict(tree: TreePart) -> dict:
    if isinstance(tree, Leaf):
        return {"leaf": tree.category, "surface": tree.surface, "key": tree.key}
    return {"node": tree.label, "children": [tree_to_dict(c) for c in tree.children]}


def tree_from_dict(payload: dict) -> TreePart:
    if "leaf" in payload:
        return Leaf(category=payload["leaf"], surface=payload["surface"],
                    key=payload.get("key"))
    return Node(label=payload["node"],
                children=tuple(tree_from_dict(c) for c in payload["children"]))


def render_tree(tree: TreePart, indent: int = 0) -> str:
    """Human-readable indented rendering for CLI output."""
    pad = "  " * indent
    if isinstance(tree, Leaf):
        key = f" [{tree.key}]" if tree.key else ""
        return f"{pad}{tree.category}: {tree.surface!r}{key}"
    lines = [f"{pad}{tree.label}"]
    for child in tree.children:
        lines.append(render_tree(child, indent + 1))
    return "\n".join(lines)
