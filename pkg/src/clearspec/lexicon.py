"""Vocabulary store: built-in function words plus user-extensible content words.

Content words (nouns, verbs, adjectives, adverbs) are added through small
templates; regular morphology is generated automatically, irregular forms
must be supplied. Every surface form, synonym, and abbreviation is indexed
for case-insensitive lookup. A lexicon value is immutable once shared:
edits return a new version.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace

from .errors import BannedWord, DuplicateSurface, LexiconFileError, MissingTemplateField

COMMON_NOUN = "common-noun"
PROPER_NOUN = "proper-noun"
VERB = "verb"
ADJECTIVE = "adjective"
ADVERB = "adverb"
PREPOSITION = "preposition"
DETERMINER = "determiner"
PRONOUN = "pronoun"
CONJUNCTION = "conjunction"
NUMBER_WORD = "number-word"

CONTENT_CLASSES = {COMMON_NOUN, PROPER_NOUN, VERB, ADJECTIVE, ADVERB}

# Vague-certainty vocabulary is rejected outright: a specification either
# states a fact or it does not.
MODAL_VERBS = {"can", "may", "might", "must", "shall", "should", "will", "would"}
MODAL_ADJECTIVES = {"possible", "probable", "certain", "sure", "necessary"}


@dataclass(frozen=True)
class LexEntry:
    """One vocabulary item: lemma, word class, features, and surface forms."""

    lemma: str
    cls: str
    noun_kind: str = "n/a"          # count | mass | n/a
    gender: str = "n/a"             # masc | fem | neut | n/a
    number: str = "n/a"             # sg | pl | n/a (pronouns, nouns)
    forms: dict = field(default_factory=dict)
    synonyms: tuple = ()
    abbreviations: tuple = ()
    roles: frozenset = frozenset()  # pronoun roles: personal/relative/wh
    value: int | None = None        # spelled-out numbers

    @property
    def compound(self):
        return " " in self.lemma

    def surfaces(self):
        """Yield (surface, slot) pairs for every way this entry can appear."""
        for slot, form in self.forms.items():
            if slot == "display":
                continue
            yield form, slot
        for s in self.synonyms:
            yield s, "synonym"
        for a in self.abbreviations:
            yield a, "abbreviation"


# --- regular morphology ---------------------------------------------------

_VOWELS = "aeiou"


def pluralize(noun):
    """Regular plural; compounds pluralize their last word."""
    head, _, last = noun.rpartition(" ")
    if re.search(r"(s|x|z|ch|sh)$", last):
        last += "es"
    elif len(last) > 1 and last.endswith("y") and last[-2] not in _VOWELS:
        last = last[:-1] + "ies"
    else:
        last += "s"
    return f"{head} {last}" if head else last


def third_singular(verb):
    """Regular present third singular; particle verbs inflect their first word."""
    first, _, tail = verb.partition(" ")
    if re.search(r"(s|x|z|ch|sh|o)$", first):
        first += "es"
    elif len(first) > 1 and first.endswith("y") and first[-2] not in _VOWELS:
        first = first[:-1] + "ies"
    else:
        first += "s"
    return f"{first} {tail}" if tail else first


def syllable_count(word):
    return max(1, len(re.findall(r"[aeiouy]+", word)))


def degree_forms(adj):
    """Comparative/superlative: inflectional for one syllable, analytic otherwise."""
    if syllable_count(adj) == 1:
        if adj.endswith("e"):
            return adj + "r", adj + "st"
        if len(adj) > 1 and adj.endswith("y") and adj[-2] not in _VOWELS:
            return adj[:-1] + "ier", adj[:-1] + "iest"
        if (
            len(adj) >= 3
            and adj[-1] not in _VOWELS + "wxy"
            and adj[-2] in _VOWELS
            and adj[-3] not in _VOWELS
        ):
            return adj + adj[-1] + "er", adj + adj[-1] + "est"
        return adj + "er", adj + "est"
    return "more " + adj, "most " + adj


# --- built-in function words -----------------------------------------------

def _fw(lemma, cls, **kw):
    forms = kw.pop("forms", {"base": lemma})
    return LexEntry(lemma=lemma, cls=cls, forms=forms, **kw)


def _pronoun(lemma, gender, number, roles):
    return LexEntry(
        lemma=lemma,
        cls=PRONOUN,
        gender=gender,
        number=number,
        forms={"base": lemma},
        roles=frozenset(roles),
    )


_NUMBER_WORDS = ["one", "two", "three", "four", "five",
                 "six", "seven", "eight", "nine", "ten"]

FUNCTION_WORDS = tuple(
    [
        _fw("a", DETERMINER),
        _fw("an", DETERMINER),
        _fw("the", DETERMINER),
        _fw("no", DETERMINER),
        _fw("and", CONJUNCTION),
        _fw("or", CONJUNCTION),
        _fw("nor", CONJUNCTION),
        _fw("either", CONJUNCTION),
        _fw("neither", CONJUNCTION),
        _fw("if", CONJUNCTION),
        _fw("then", CONJUNCTION),
        _fw("not", CONJUNCTION),
        _fw("does", CONJUNCTION),
        _fw("do", CONJUNCTION),
        _fw("is", CONJUNCTION),
        _fw("are", CONJUNCTION),
        # structural adverbs controlling plural readings are predefined
        _fw("each", ADVERB),
        _fw("together", ADVERB),
        _fw("more", ADVERB),
        _fw("most", ADVERB),
        _pronoun("he", "masc", "sg", ["personal"]),
        _pronoun("him", "masc", "sg", ["personal"]),
        _pronoun("she", "fem", "sg", ["personal"]),
        _pronoun("her", "fem", "sg", ["personal"]),
        _pronoun("it", "neut", "sg", ["personal"]),
        _pronoun("they", "n/a", "pl", ["personal"]),
        _pronoun("them", "n/a", "pl", ["personal"]),
        _pronoun("who", "n/a", "n/a", ["relative", "wh"]),
        _pronoun("which", "n/a", "n/a", ["relative"]),
        _pronoun("that", "n/a", "n/a", ["relative"]),
        _pronoun("what", "n/a", "n/a", ["wh"]),
        _fw("with", PREPOSITION),
        _fw("in", PREPOSITION),
        _fw("on", PREPOSITION),
        _fw("at", PREPOSITION),
        _fw("to", PREPOSITION),
        _fw("from", PREPOSITION),
        _fw("into", PREPOSITION),
        _fw("of", PREPOSITION),
        _fw("for", PREPOSITION),
        _fw("by", PREPOSITION),
        _fw("without", PREPOSITION),
    ]
    + [
        LexEntry(lemma=w, cls=NUMBER_WORD, forms={"base": w}, value=i + 1)
        for i, w in enumerate(_NUMBER_WORDS)
    ]
)


class Lexicon:
    """Immutable vocabulary: shared built-ins plus one content-word layer."""

    def __init__(self, entries=(), _baseline=True):
        self.version = 0
        self._entries = []            # content words, in insertion order
        self._index = {}              # surface -> [(entry, slot)]
        self._compounds = {}          # compound surface -> (entry, slot)
        self.max_compound_words = 1
        if _baseline:
            for e in FUNCTION_WORDS:
                self._register(e)
        for e in entries:
            self._validate(e)
            e = self._complete(e)
            self._register(e, content=True)

    # -- construction helpers ------------------------------------------------

    def _register(self, entry, content=False):
        if content:
            self._entries.append(entry)
        for surface, slot in entry.surfaces():
            key = surface.lower()
            owners = self._index.setdefault(key, [])
            owners.append((entry, slot))
            if " " in key:
                self._compounds[key] = (entry, slot)
                self.max_compound_words = max(
                    self.max_compound_words, key.count(" ") + 1
                )

    def _validate(self, entry):
        if not entry.lemma or not entry.lemma.strip():
            raise MissingTemplateField("lemma must be nonempty")
        if entry.cls not in CONTENT_CLASSES:
            raise MissingTemplateField(
                f"cannot add {entry.cls!r}: only content-word classes "
                f"({', '.join(sorted(CONTENT_CLASSES))}) are user-extensible"
            )
        lemma = entry.lemma.lower()
        if entry.cls == VERB and lemma in MODAL_VERBS:
            raise BannedWord(f"modal verb {lemma!r} is not allowed")
        if entry.cls == ADJECTIVE and lemma in MODAL_ADJECTIVES:
            raise BannedWord(f"modal adjective {lemma!r} is not allowed")
        if entry.cls == COMMON_NOUN:
            if entry.noun_kind not in ("count", "mass"):
                raise MissingTemplateField(
                    f"noun {lemma!r} needs kind 'count' or 'mass'"
                )
            if entry.gender not in ("masc", "fem", "neut"):
                raise MissingTemplateField(f"noun {lemma!r} needs a gender")
        if entry.cls == PROPER_NOUN and entry.gender not in ("masc", "fem", "neut"):
            raise MissingTemplateField(f"proper noun {lemma!r} needs a gender")

    def _complete(self, entry):
        """Fill in regular forms that were not supplied explicitly."""
        lemma = entry.lemma.lower()
        forms = dict(entry.forms)
        if entry.cls == COMMON_NOUN:
            forms.setdefault("sg", lemma)
            if entry.noun_kind == "count":
                forms.setdefault("pl", pluralize(lemma))
            else:
                forms.pop("pl", None)  # mass nouns have no plural slot
        elif entry.cls == PROPER_NOUN:
            forms.setdefault("display", entry.lemma)
            forms["base"] = lemma
        elif entry.cls == VERB:
            forms.setdefault("third-sg", third_singular(lemma))
            forms.setdefault("third-pl", lemma)
        elif entry.cls == ADJECTIVE:
            forms.setdefault("base", lemma)
            cmp_, sup = degree_forms(lemma)
            forms.setdefault("comparative", cmp_)
            forms.setdefault("superlative", sup)
        elif entry.cls == ADVERB:
            forms.setdefault("base", lemma)
        return replace(
            entry,
            lemma=lemma,
            forms=forms,
            synonyms=tuple(s.lower() for s in entry.synonyms),
            abbreviations=tuple(entry.abbreviations),
        )

    # -- public API ------------------------------------------------------------

    @property
    def entries(self):
        return tuple(self._entries)

    def add_entry(self, entry: LexEntry) -> "Lexicon":
        """Return a new lexicon version with `entry` added."""
        self._validate(entry)
        entry = self._complete(entry)
        for surface, slot in entry.surfaces():
            for owner, _ in self._index.get(surface.lower(), []):
                if owner.cls == entry.cls:
                    raise DuplicateSurface(
                        f"surface {surface!r} already belongs to "
                        f"{owner.cls} {owner.lemma!r}"
                    )
                if slot == "abbreviation":
                    raise DuplicateSurface(
                        f"abbreviation {surface!r} already in use by "
                        f"{owner.lemma!r}"
                    )
        new = Lexicon.__new__(Lexicon)
        new.version = self.version + 1
        new._entries = list(self._entries)
        new._index = {k: list(v) for k, v in self._index.items()}
        new._compounds = dict(self._compounds)
        new.max_compound_words = self.max_compound_words
        new._register(entry, content=True)
        return new

    def remove_entry(self, lemma: str) -> "Lexicon":
        keep = [e for e in self._entries if e.lemma != lemma.lower()]
        return Lexicon(keep)

    def lookup(self, surface: str):
        """All (entry, slot) candidates for a surface; [] signals an unknown word."""
        return list(self._index.get(surface.lower(), []))

    def lookup_class(self, surface, cls):
        return [(e, s) for e, s in self.lookup(surface) if e.cls == cls]

    def compound_at(self, words):
        """Longest compound entry matching a prefix of lowercased `words`."""
        for n in range(min(self.max_compound_words, len(words)), 1, -1):
            hit = self._compounds.get(" ".join(words[:n]))
            if hit:
                return hit[0], hit[1], n
        return None

    def find(self, lemma, cls=None):
        for e in self._entries:
            if e.lemma == lemma.lower() and (cls is None or e.cls == cls):
                return e
        return None


# --- file format -------------------------------------------------------------
#
# One record per line:  class|lemma|features|forms|synonyms|abbreviations
# features and forms are ;-separated key=value pairs, '#' starts a comment.

def _fmt_kv(d):
    return ";".join(f"{k}={v}" for k, v in d.items())


def _parse_kv(text, lineno):
    out = {}
    if not text:
        return out
    for part in text.split(";"):
        if "=" not in part:
            raise LexiconFileError(f"line {lineno}: bad key=value {part!r}", lineno)
        k, v = part.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def save(lexicon: Lexicon, path):
    with open(path, "w", encoding="utf-8") as f:
        f.write(dumps(lexicon))


def dumps(lexicon: Lexicon) -> str:
    lines = ["# clearspec lexicon"]
    for e in sorted(lexicon.entries, key=lambda e: (e.cls, e.lemma)):
        feats = {}
        if e.noun_kind != "n/a":
            feats["kind"] = e.noun_kind
        if e.gender != "n/a":
            feats["gender"] = e.gender
        lines.append(
            "|".join(
                [
                    e.cls,
                    e.lemma,
                    _fmt_kv(feats),
                    _fmt_kv(e.forms),
                    ",".join(e.synonyms),
                    ",".join(e.abbreviations),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def loads(text: str) -> Lexicon:
    lex = Lexicon()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("|")
        if len(parts) != 6:
            raise LexiconFileError(
                f"line {lineno}: expected 6 '|'-separated fields, got {len(parts)}",
                lineno,
            )
        cls, lemma, feats_s, forms_s, syn_s, abbr_s = parts
        feats = _parse_kv(feats_s, lineno)
        forms = _parse_kv(forms_s, lineno)
        entry = LexEntry(
            lemma=lemma,
            cls=cls,
            noun_kind=feats.get("kind", "n/a"),
            gender=feats.get("gender", "n/a"),
            forms=forms,
            synonyms=tuple(s for s in syn_s.split(",") if s),
            abbreviations=tuple(a for a in abbr_s.split(",") if a),
        )
        try:
            lex = lex.add_entry(entry)
        except LexiconFileError:
            raise
        except Exception as exc:  # surface the offending line
            raise LexiconFileError(f"line {lineno}: {exc}", lineno) from exc
    return lex


def load(path) -> Lexicon:
    with open(path, encoding="utf-8") as f:
        return loads(f.read())
