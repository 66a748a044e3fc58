import pytest

from clearspec import lexicon as lx
from clearspec.session import Session

NOUNS = [
    "customer", "card", "code", "personal code", "slot", "machine",
    "queue", "receipt", "key", "bank",
]
VERBS = [
    "enter", "reject", "accept", "check", "carry", "type", "insert",
    "wait", "beep", "print",
]
ADJECTIVES = ["valid", "numeric", "correct", "empty", "red"]


def build_lexicon():
    lex = lx.Lexicon()
    for n in NOUNS:
        lex = lex.add_entry(
            lx.LexEntry(lemma=n, cls=lx.COMMON_NOUN, noun_kind="count", gender="neut")
        )
    for v in VERBS:
        lex = lex.add_entry(lx.LexEntry(lemma=v, cls=lx.VERB))
    for a in ADJECTIVES:
        lex = lex.add_entry(lx.LexEntry(lemma=a, cls=lx.ADJECTIVE))
    lex = lex.add_entry(
        lx.LexEntry(
            lemma="SimpleMat", cls=lx.PROPER_NOUN, gender="neut",
            abbreviations=("SM",),
        )
    )
    lex = lex.add_entry(lx.LexEntry(lemma="John", cls=lx.PROPER_NOUN, gender="masc"))
    lex = lex.add_entry(lx.LexEntry(lemma="Mary", cls=lx.PROPER_NOUN, gender="fem"))
    return lex


@pytest.fixture(scope="session")
def lex():
    return build_lexicon()


@pytest.fixture
def session():
    return Session(build_lexicon())


def accept_all(session, *sentences):
    for s in sentences:
        session.analyze(s)
        session.accept()
    return session
