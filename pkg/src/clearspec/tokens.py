"""Sentence splitting and tokenization.

Compound content words ("personal code") are merged into single word tokens
by longest match against the lexicon, so the parser only ever sees one token
per vocabulary item.
"""

import re
from dataclasses import dataclass

from .errors import UnterminatedSentence

WORD = "word"
NUMERAL = "numeral"
PUNCT = "punctuation"

_TOKEN_RE = re.compile(
    r"""
    (?P<numeral>\d+\.\d+|\d+)
  | (?P<word>[A-Za-z][A-Za-z0-9_'-]*)
  | (?P<punct>[.?,;:!])
  | (?P<junk>\S)
    """,
    re.VERBOSE,
)

TERMINATORS = {".", "?"}


@dataclass(frozen=True)
class Token:
    surface: str
    start: int
    end: int
    kind: str

    @property
    def lower(self):
        return self.surface.lower()

    @property
    def span(self):
        return (self.start, self.end)


def split_sentences(text):
    """Split text into (sentence, offset) pairs on './?' followed by space or EOF.

    Numerals keep their decimal points: '3.5' never ends a sentence.
    """
    out = []
    start = None
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if start is None and not ch.isspace():
            start = i
        if ch in TERMINATORS and start is not None:
            if ch == "." and i > 0 and i + 1 < n and text[i - 1].isdigit() and text[i + 1].isdigit():
                i += 1
                continue
            if i + 1 >= n or text[i + 1].isspace():
                out.append((text[start : i + 1], start))
                start = None
        i += 1
    if start is not None:
        out.append((text[start:], start))
    return out


def tokenize(sentence, lexicon, offset=0):
    """Tokenize one sentence; requires a './?' terminator.

    Token spans are character offsets into the original text and never
    overlap; compounds known to the lexicon come back as single word tokens.
    """
    raw = []
    for m in _TOKEN_RE.finditer(sentence):
        kind = m.lastgroup
        surface = m.group()
        if kind == "junk":
            kind = "punct"
        raw.append(
            Token(
                surface,
                offset + m.start(),
                offset + m.end(),
                {"numeral": NUMERAL, "word": WORD, "punct": PUNCT}[kind],
            )
        )
    if not raw or raw[-1].kind != PUNCT or raw[-1].surface not in TERMINATORS:
        raise UnterminatedSentence(
            "sentence must end with '.' or '?'",
            (offset, offset + len(sentence)),
        )
    return _merge_compounds(raw, lexicon)


def _merge_compounds(tokens, lexicon):
    out = []
    i = 0
    while i < len(tokens):
        t = tokens[i]
        if t.kind == WORD and lexicon.max_compound_words > 1:
            window = []
            j = i
            while j < len(tokens) and tokens[j].kind == WORD and len(window) < lexicon.max_compound_words:
                window.append(tokens[j].lower)
                j += 1
            hit = lexicon.compound_at(window)
            if hit:
                _, _, n = hit
                merged = tokens[i : i + n]
                out.append(
                    Token(
                        " ".join(tok.surface for tok in merged),
                        merged[0].start,
                        merged[-1].end,
                        WORD,
                    )
                )
                i += n
                continue
        out.append(t)
        i += 1
    return out
