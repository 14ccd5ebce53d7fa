"""Language generation: lexicon, grammar, realisation, parsing, summaries."""

from .grammar import Grammar, GrammarRule, load_grammar
from .lexicon import Lexicon, LexiconEntry, load_lexicon
from .parser import parse, tokenize
from .realize import IDSInstance, TENSES, realize, schema_to_ids
from .summarize import SummaryItem, summarize
from .tree import Leaf, Node, linearize, render_tree, tree_from_dict, tree_to_dict

__all__ = [
    "Grammar", "GrammarRule", "load_grammar",
    "Lexicon", "LexiconEntry", "load_lexicon",
    "parse", "tokenize",
    "IDSInstance", "TENSES", "realize", "schema_to_ids",
    "SummaryItem", "summarize",
    "Leaf", "Node", "linearize", "render_tree", "tree_from_dict", "tree_to_dict",
]
