"""Exception types shared across the toolkit."""


class SceneScribeError(Exception):
    """Base class for all domain errors raised by this package."""


class DegenerateInterval(SceneScribeError):
    """Interval construction with start >= end."""


class FamilyMismatch(SceneScribeError):
    """Relation symbol does not belong to the fluent's relation family."""


class GeometryMissing(SceneScribeError):
    """An operation needed geometry (box/depth) the observation lacks."""


class SamplingGap(SceneScribeError):
    """A track could not be sampled: gap between observations too wide."""


class AmbiguousLocation(SceneScribeError):
    """A point fell inside more than one named region during localization."""


class VocabularyGap(SceneScribeError):
    """An entity or region id has no lexicon key in the vocabulary."""


class LexiconGap(SceneScribeError):
    """A lexicon key required for realisation is missing."""


class GrammarGap(SceneScribeError):
    """No grammar rule licenses a node the realiser needs to build."""


class UnknownToken(SceneScribeError):
    """A sentence chunk could not be matched against the lexicon."""


class ParseFailure(SceneScribeError):
    """The token sequence has no derivation under the grammar."""


class InputValidationError(SceneScribeError):
    """A scene input file failed schema validation.

    Carries enough context to name the offending file (and line, for
    line-delimited inputs).
    """

    def __init__(self, message, filename=None, line=None):
        self.filename = filename
        self.line = line
        where = ""
        if filename is not None:
            where = f"{filename}: " if line is None else f"{filename}:{line}: "
        super().__init__(where + message)
