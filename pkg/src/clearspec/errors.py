"""Diagnostic types shared across the pipeline.

Every rejection a user can trigger carries a stable machine-readable code
plus a human-readable message, so the CLI, the HTTP service, and the tests
can all dispatch on the same identifiers.
"""


class Diagnostic(Exception):
    """Base class for every user-facing rejection."""

    code = "error"

    def __init__(self, message, span=None):
        super().__init__(message)
        self.message = message
        self.span = span  # (start, end) character offsets, when known

    def as_dict(self):
        d = {"code": self.code, "message": self.message}
        if self.span is not None:
            d["span"] = list(self.span)
        return d


# --- lexicon -----------------------------------------------------------

class LexiconError(Diagnostic):
    code = "lexicon-error"


class DuplicateSurface(LexiconError):
    code = "duplicate-surface"


class MissingTemplateField(LexiconError):
    code = "missing-template-field"


class BannedWord(LexiconError):
    code = "banned-word"


class LexiconFileError(LexiconError):
    code = "lexicon-file-error"

    def __init__(self, message, line=None):
        super().__init__(message)
        self.line = line

    def as_dict(self):
        d = super().as_dict()
        if self.line is not None:
            d["line"] = self.line
        return d


# --- tokenizing / parsing ----------------------------------------------

class ParseFailure(Diagnostic):
    """Any rejection raised before a sentence has a syntax tree."""

    code = "syntax-error"


class UnterminatedSentence(ParseFailure):
    code = "unterminated-sentence"


class SentenceSyntaxError(ParseFailure):
    code = "syntax-error"


class UnknownWords(ParseFailure):
    code = "unknown-words"

    def __init__(self, words, span=None):
        self.words = list(words)
        super().__init__("unknown words: " + ", ".join(self.words), span)

    def as_dict(self):
        d = super().as_dict()
        d["words"] = self.words
        return d


class ModalVerbRejected(ParseFailure):
    code = "modal-verb"


class ParticipleRejected(ParseFailure):
    code = "participle"


class NonPresentTenseRejected(ParseFailure):
    code = "non-present-tense"


class PassiveRejected(ParseFailure):
    code = "passive"


# --- discourse resolution ------------------------------------------------

class ResolutionFailure(Diagnostic):
    code = "resolution-error"


class UnresolvedPronoun(ResolutionFailure):
    code = "unresolved-pronoun"


class NegatedDisjunctionAmbiguous(ResolutionFailure):
    code = "negated-disjunction"

    def __init__(self, message=None, span=None):
        super().__init__(
            message
            or "a plain disjunction under a negation is ambiguous; "
            "write 'neither ... nor ...', repeat the negation for each "
            "disjunct, or use 'not ... either ... or ...'",
            span,
        )


class UnsupportedConstruction(ResolutionFailure):
    code = "unsupported-construction"


# --- clause translation --------------------------------------------------

class TranslationFailure(Diagnostic):
    code = "translation-error"


class UntranslatableDisjunction(TranslationFailure):
    code = "untranslatable-disjunction"


class NonAtomicNegation(TranslationFailure):
    code = "non-atomic-negation"


# --- execution ------------------------------------------------------------

class ExecutionFailure(Diagnostic):
    code = "execution-error"


class InconsistentAssertion(ExecutionFailure):
    code = "inconsistent-assertion"


class MalformedAssertion(ExecutionFailure):
    code = "malformed-assertion"

    def __init__(self, message, line=None):
        super().__init__(message)
        self.line = line


class OracleExhausted(ExecutionFailure):
    code = "oracle-exhausted"
