import pytest

from clearspec.discourse import extend_drs
from clearspec.drs import Drs, alpha_equal
from clearspec.paraphrase import (
    ATTACHMENT,
    RECONSTRUCTION,
    SUBSTITUTION,
    render,
    strip_markers,
)
from clearspec.parser import parse_sentence
from clearspec.tokens import tokenize

from conftest import build_lexicon


@pytest.fixture(scope="module")
def lex():
    return build_lexicon()


def paraphrase_of(text, ctx, lex, index=0):
    result = parse_sentence(tokenize(text, lex), lex)
    new, report = extend_drs(result, ctx, index)
    return render(result.tree, report), new, report, result


def test_ellipsis_paraphrase(lex):
    p, _, _, _ = paraphrase_of(
        "The customer enters a card and a numeric personal code.", Drs(), lex
    )
    assert p.text == (
        "the customer enters a card and [the customer enters] "
        "a numeric personal code."
    )
    kinds = {m.kind for m in p.markers}
    assert kinds == {RECONSTRUCTION}


def test_substitution_paraphrase(lex):
    ctx, _, = Drs(), None
    _, ctx, _, _ = paraphrase_of(
        "The customer enters a card and a numeric personal code.", ctx, lex, 0
    )
    p, _, _, _ = paraphrase_of(
        "If it is not valid then SM rejects the card.", ctx, lex, 1
    )
    assert p.text == (
        "if [the personal code] is not valid then [simplemat] rejects the [card]."
    )
    assert [m.kind for m in p.markers] == [SUBSTITUTION] * 3


def test_attachment_braces(lex):
    p, _, _, _ = paraphrase_of("The customer enters a card with a code.", Drs(), lex)
    assert p.text == "the customer {enters a card with a code}."
    assert [m.kind for m in p.markers] == [ATTACHMENT]
    start, end = p.markers[0].start, p.markers[0].end
    assert p.text[start:end] == "{enters a card with a code}"


def test_identity_paraphrase_has_no_markers(lex):
    p, _, _, _ = paraphrase_of("A customer enters a card.", Drs(), lex)
    assert p.text == "a customer enters a card."
    assert p.markers == []


def test_stripping_markers_yields_parseable_text(lex):
    p, _, _, _ = paraphrase_of(
        "The customer enters a card and a numeric personal code.", Drs(), lex
    )
    stripped = strip_markers(p.text)
    parse_sentence(tokenize(stripped, lex), lex)  # must not raise


def test_every_report_entry_has_a_marker(lex):
    cases = [
        "The customer enters a card and a numeric personal code.",
        "The customer enters a card with a code.",
        "The customer enters a card that carries a code.",
        "John and Mary each enter a card.",
        "The customer does not enter a card and does not enter a code.",
    ]
    ctx = Drs()
    for i, text in enumerate(cases):
        p, ctx, report, _ = paraphrase_of(text, ctx, lex, i)
        markable = [
            e for e in report.entries
            if e.kind in ("pronoun", "definite", "abbreviation", "synonym",
                          "ellipsis", "distribution", "attachment")
        ]
        if markable:
            assert p.markers, text
        # substitution/reconstruction markers in 1:1 kinds coverage
        kinds_present = {m.kind for m in p.markers}
        if report.of_kind("attachment"):
            assert ATTACHMENT in kinds_present
        if report.of_kind("ellipsis") or report.of_kind("distribution"):
            assert RECONSTRUCTION in kinds_present


CORPUS = [
    "The customer enters a card.",
    "A customer enters a card.",
    "The customer enters a card and a numeric personal code.",
    "If it is not valid then SM rejects the card.",
    "The customer enters a card with a code.",
    "The customer enters a card that carries a code.",
    "The machine beeps.",
    "John and Mary each enter a card.",
    "John and Mary enter a card together.",
    "John and Mary enter a card.",
    "The customer enters the card and the customer types a code.",
    "John enters a card or Mary enters a code.",
    "The customer enters either a card or a code.",
    "The customer enters a card or a code.",
    "The customer enters neither a card nor a code.",
    "The customer does not enter a card and does not enter a code.",
    "The customer does not enter either a card or a code.",
    "The customer does not enter a card.",
    "No customer enters a card.",
    "The card is valid.",
    "The card is not valid.",
    "The card is a key.",
    "Mary waits in a queue.",
    "She types a code.",
    "If a customer enters a card then SimpleMat accepts the card.",
    "If the code is valid then the machine prints a receipt.",
    "SimpleMat checks the personal code.",
    "John enters 1234.",
]


def test_round_trip_corpus(lex):
    """Reparsing the marker-stripped paraphrase in the same context gives an
    alpha-equivalent extension, for every constructor in the corpus."""
    ctx = Drs()
    for i, text in enumerate(CORPUS):
        result = parse_sentence(tokenize(text, lex), lex)
        new, report = extend_drs(result, ctx, i)
        p = render(result.tree, report)
        stripped = strip_markers(p.text)
        result2 = parse_sentence(tokenize(stripped, lex), lex)
        again, _ = extend_drs(result2, ctx, i)
        assert alpha_equal(new, again), f"{text!r} -> {p.text!r}"
        ctx = new
    assert len(CORPUS) >= 20
