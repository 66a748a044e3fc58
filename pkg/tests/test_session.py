import pytest

from clearspec import lexicon as lx
from clearspec.errors import UnknownWords, UnsupportedConstruction
from clearspec.session import Session

from conftest import accept_all, build_lexicon

RUNNING = [
    "The customer enters a card and a numeric personal code.",
    "If it is not valid then SM rejects the card.",
]


def test_accept_assimilates_and_reject_discards():
    s = Session(build_lexicon())
    s.analyze("The customer enters a card.")
    assert s.pending is not None
    s.reject()
    assert s.pending is None and s.kb.clauses == [] and not s.drs.referents

    s.analyze("The customer enters a card.")
    clauses = s.accept()
    assert clauses == "fact(customer(0)).\nfact(card(1)).\nfact(enter(0, 1)).\n"
    assert len(s.accepted) == 1


def test_new_analysis_replaces_pending():
    s = Session(build_lexicon())
    s.analyze("The customer enters a card.")
    s.analyze("The machine beeps.")
    s.accept()
    assert [a.text for a in s.accepted] == ["The machine beeps."]


def test_questions_rejected_as_sentences_and_vice_versa():
    s = Session(build_lexicon())
    with pytest.raises(UnsupportedConstruction):
        s.analyze("Does the customer enter a card?")
    with pytest.raises(UnsupportedConstruction):
        s.ask("The customer enters a card.")


def test_ask_round_trip():
    s = accept_all(Session(build_lexicon()), *RUNNING)
    r = s.ask("Does the customer enter a card?")
    assert r.answers == ["Answer: yes"]
    r = s.ask("Who enters a card?")
    assert r.answers == ["Answer: [a customer] enters a card."]


def test_unknown_word_then_add_then_resubmit():
    s = Session(build_lexicon())
    with pytest.raises(UnknownWords) as e:
        s.analyze("The customer enters a voucher.")
    assert e.value.words == ["voucher"]
    s.add_word(
        lx.LexEntry(lemma="voucher", cls=lx.COMMON_NOUN, noun_kind="count",
                    gender="neut")
    )
    s.analyze("The customer enters a voucher.")
    s.accept()
    assert "voucher(1)" in s.clauses_text()


def test_save_load_replays_state(tmp_path):
    s = accept_all(Session(build_lexicon()), *RUNNING)
    path = tmp_path / "session.json"
    s.save(path)
    loaded = Session.load(path)
    assert loaded.drs_text() == s.drs_text()
    assert loaded.clauses_text() == s.clauses_text()
    assert [a.text for a in loaded.accepted] == [a.text for a in s.accepted]
    assert loaded.ask("Does SM reject the card?").answers == ["Answer: yes"]


def test_paraphrase_log():
    s = accept_all(Session(build_lexicon()), *RUNNING)
    lines = s.paraphrase_text().splitlines()
    assert lines == [
        "the customer enters a card and [the customer enters] a numeric "
        "personal code.",
        "if [the personal code] is not valid then [simplemat] rejects the [card].",
    ]
