import subprocess
import sys
from pathlib import Path

import pytest

from clearspec import lexicon as lx

from conftest import build_lexicon

SPEC_TEXT = (
    "The customer enters a card and a numeric personal code.\n"
    "If it is not valid then SM rejects the card.\n"
)

EXPECTED_CLAUSES = (
    "fact(customer(0)).\n"
    "fact(card(1)).\n"
    "fact(enter(0, 1)).\n"
    "fact(numeric(2)).\n"
    "fact(personal_code(2)).\n"
    "fact(enter(0, 2)).\n"
    "fact(named(3, simplemat)).\n"
    "fact((reject(3, 1):- neg(valid(2)))).\n"
)


@pytest.fixture(scope="module")
def lexfile(tmp_path_factory):
    path = tmp_path_factory.mktemp("lex") / "words.lex"
    lx.save(build_lexicon(), path)
    return path


def run_cli(*args, stdin=""):
    return subprocess.run(
        [sys.executable, "-m", "clearspec.cli", *args],
        input=stdin,
        capture_output=True,
        text=True,
        timeout=60,
    )


def test_batch_emit_clauses(tmp_path, lexfile):
    spec = tmp_path / "spec.txt"
    spec.write_text(SPEC_TEXT)
    r = run_cli("--lexicon", str(lexfile), "--batch", str(spec), "--emit", "clauses")
    assert r.returncode == 0, r.stderr
    assert r.stdout == EXPECTED_CLAUSES


def test_batch_emit_drs(tmp_path, lexfile):
    spec = tmp_path / "spec.txt"
    spec.write_text(SPEC_TEXT)
    r = run_cli("--lexicon", str(lexfile), "--batch", str(spec), "--emit", "drs")
    assert r.returncode == 0
    assert r.stdout.splitlines()[0] == "[0, 1, 2, 3]"


def test_batch_report_file(tmp_path, lexfile):
    spec = tmp_path / "spec.txt"
    spec.write_text(SPEC_TEXT)
    report = tmp_path / "report.txt"
    r = run_cli(
        "--lexicon", str(lexfile), "--batch", str(spec),
        "--emit", "paraphrase", "--report", str(report),
    )
    assert r.returncode == 0
    assert report.read_text().splitlines()[1] == (
        "if [the personal code] is not valid then [simplemat] rejects the [card]."
    )


def test_batch_empty_file(tmp_path, lexfile):
    spec = tmp_path / "empty.txt"
    spec.write_text("")
    r = run_cli("--lexicon", str(lexfile), "--batch", str(spec), "--emit", "clauses")
    assert r.returncode == 0
    assert r.stdout == ""


def test_batch_exit_codes(tmp_path, lexfile):
    cases = [
        ("The customer must enter a card.\n", 1),          # parse class
        ("He enters a card.\n", 2),                        # resolution class
        ("The customer enters a card or a code.\n", 3),    # translation class
    ]
    for text, code in cases:
        spec = tmp_path / "case.txt"
        spec.write_text(text)
        r = run_cli("--lexicon", str(lexfile), "--batch", str(spec))
        assert r.returncode == code, (text, r.stderr)


def test_batch_execution_with_defs(tmp_path, lexfile):
    spec = tmp_path / "teller.txt"
    spec.write_text(
        "The customer enters a card and a personal code.\n"
        "SimpleMat checks the personal code.\n"
        "If the personal code is valid then SimpleMat accepts the card.\n"
        "If the personal code is not valid then SimpleMat rejects the card.\n"
    )
    defs = tmp_path / "defs.txt"
    defs.write_text(
        "john is a customer\nbank_card is a card\n1234 is a personal_code\n"
        "s1 is a simplemat\n1234 is not valid\n"
    )
    r = run_cli("--lexicon", str(lexfile), "--batch", str(spec), "--defs", str(defs))
    assert r.returncode == 0, r.stderr
    assert r.stdout.splitlines() == [
        "event: john enters the bank_card",
        "event: john enters 1234",
        "event: s1 checks 1234",
        "event: s1 rejects the bank_card",
    ]


def test_repl_accept_flow(lexfile):
    stdin = (
        "The customer enters a card and a numeric personal code.\n"
        "y\n"
        "If it is not valid then SM rejects the card.\n"
        "y\n"
        "show clauses\n"
        'ask "Does the customer enter a card?"\n'
        "quit\n"
    )
    r = run_cli("--lexicon", str(lexfile), stdin=stdin)
    assert r.returncode == 0
    assert "accept? [y/n]" in r.stdout
    assert "fact((reject(3, 1):- neg(valid(2))))." in r.stdout
    assert "Answer: yes" in r.stdout


def test_repl_reject_discards(lexfile):
    stdin = (
        "The customer enters a card.\n"
        "n\n"
        "show clauses\n"
        "quit\n"
    )
    r = run_cli("--lexicon", str(lexfile), stdin=stdin)
    assert "rejected" in r.stdout
    assert "fact(" not in r.stdout


def test_repl_unknown_word_hint(lexfile):
    stdin = "The customer enters a voucher.\nquit\n"
    r = run_cli("--lexicon", str(lexfile), stdin=stdin)
    assert "unknown words: voucher" in r.stdout
    assert "lex add" in r.stdout


def test_repl_ask_paging(lexfile):
    stdin = (
        "John enters a card.\ny\n"
        "Mary enters a card.\ny\n"
        "Who enters a card?\n"
        "y\n"
        "quit\n"
    )
    r = run_cli("--lexicon", str(lexfile), stdin=stdin)
    assert "Answer: [john] enters a card." in r.stdout
    assert "more? [y/n]" in r.stdout
    assert "Answer: [mary] enters a card." in r.stdout


def test_repl_execute_interactive(lexfile):
    stdin = (
        "John enters a card.\ny\n"
        "execute\n"
        "j1 is a john\n"
        "c1 is a card\n"
        "quit\n"
    )
    r = run_cli("--lexicon", str(lexfile), stdin=stdin)
    assert "event: j1 enters the c1" in r.stdout


def test_repl_never_crashes_on_errors(lexfile):
    stdin = (
        "The customer must enter a card.\n"
        "He enters a card.\n"
        "ask \"Who enters a card?\"\n"
        "quit\n"
    )
    r = run_cli("--lexicon", str(lexfile), stdin=stdin)
    assert r.returncode == 0
    assert "error [modal-verb]" in r.stdout
    assert "error [unresolved-pronoun]" in r.stdout


def test_lex_subcommand_round_trip(tmp_path):
    lexpath = tmp_path / "my.lex"
    r = run_cli("lex", "add", "noun", "card", "--lexicon", str(lexpath))
    assert r.returncode == 0
    r = run_cli("lex", "add", "verb", "enter", "--lexicon", str(lexpath))
    assert r.returncode == 0
    r = run_cli("lex", "list", "--lexicon", str(lexpath))
    assert "common-noun|card" in r.stdout and "verb|enter" in r.stdout
    r = run_cli("lex", "rm", "card", "--lexicon", str(lexpath))
    r = run_cli("lex", "list", "--lexicon", str(lexpath))
    assert "card" not in r.stdout


def test_session_persistence_flag(tmp_path, lexfile):
    sess = tmp_path / "session.json"
    stdin = "The customer enters a card.\ny\nquit\n"
    r = run_cli("--lexicon", str(lexfile), "--session", str(sess), stdin=stdin)
    assert r.returncode == 0 and sess.exists()
    r = run_cli("--session", str(sess), stdin="show clauses\nquit\n")
    assert "fact(enter(0, 1))." in r.stdout
