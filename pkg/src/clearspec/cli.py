"""Command line front end: interactive REPL, batch compilation, lexicon editing.

Batch exit codes: 1 parse error, 2 resolution error, 3 translation error.
"""

import argparse
import sys

from . import lexicon as lx
from .errors import (
    Diagnostic,
    ParseFailure,
    ResolutionFailure,
    TranslationFailure,
    UnknownWords,
)
from .executor import EventTrace, load_definitions, parse_assertion
from .session import Session
from .tokens import split_sentences
from .translator import translate

PROMPT = "spec> "


def _exit_code(exc):
    if isinstance(exc, TranslationFailure):
        return 3
    if isinstance(exc, ResolutionFailure):
        return 2
    return 1


# --- REPL ----------------------------------------------------------------------

HELP = """\
Enter a declarative sentence ending in '.' to analyze it, or a question
ending in '?'. Commands:
  ask "<question>"       answer a question from the knowledge base
  show drs|clauses|paraphrase
  lex add <class> <lemma> [gender] [kind]    e.g. lex add noun card neut count
  lex list
  execute [<definition file>]
  save <path> | load <path>
  help | quit
"""


def repl(session, stdin=sys.stdin, stdout=sys.stdout):
    def say(text=""):
        print(text, file=stdout)

    def ask_line(prompt):
        stdout.write(prompt)
        stdout.flush()
        line = stdin.readline()
        if not line:
            raise EOFError
        return line.rstrip("\n")

    say("clearspec workbench. 'help' lists commands, 'quit' exits.")
    while True:
        try:
            line = ask_line(PROMPT).strip()
        except EOFError:
            return 0
        if not line:
            continue
        try:
            if line in ("quit", "exit"):
                return 0
            if line == "help":
                say(HELP)
            elif line.startswith("ask"):
                q = line[3:].strip().strip('"')
                _repl_ask(session, q, say, ask_line)
            elif line.startswith("show"):
                what = line[4:].strip()
                if what == "drs":
                    say(session.drs_text())
                elif what == "clauses":
                    say(session.clauses_text().rstrip("\n"))
                elif what == "paraphrase":
                    say(session.paraphrase_text())
                else:
                    say("show drs|clauses|paraphrase")
            elif line.startswith("lex"):
                _repl_lex(session, line[3:].strip().split(), say)
            elif line.startswith("execute"):
                rest = line[7:].strip()
                defs = load_definitions(rest) if rest else None
                _repl_execute(session, defs, say, ask_line)
            elif line.startswith("save "):
                session.save(line[5:].strip())
                say("saved.")
            elif line.startswith("load "):
                new = Session.load(line[5:].strip())
                session.lexicon = new.lexicon
                session.drs = new.drs
                session.kb = new.kb
                session.accepted = new.accepted
                say(f"loaded {len(new.accepted)} sentences.")
            elif line.endswith("?"):
                _repl_ask(session, line, say, ask_line)
            else:
                _repl_sentence(session, line, say, ask_line)
        except EOFError:
            return 0
        except UnknownWords as exc:
            say(f"unknown words: {', '.join(exc.words)}")
            say("add them with: lex add <class> <lemma> [gender] [kind], "
                "then resubmit the sentence.")
        except Diagnostic as exc:
            say(f"error [{exc.code}]: {exc.message}")


def _repl_sentence(session, text, say, ask_line):
    analysis = session.analyze(text)
    say(analysis.paraphrase.text)
    reply = ask_line("accept? [y/n] ").strip().lower()
    if reply.startswith("y"):
        session.accept()
        say("accepted.")
    else:
        session.reject()
        say("rejected; please rephrase.")


def _repl_ask(session, text, say, ask_line):
    result = session.ask(text)
    if not result.answers:
        note = f" ({result.note})" if result.note else ""
        say(f"Answer: no answers{note}")
        return
    for i, line in enumerate(result.answers):
        say(line)
        if i + 1 < len(result.answers):
            more = ask_line("more? [y/n] ").strip().lower()
            if not more.startswith("y"):
                break


def _repl_execute(session, defs, say, ask_line):
    ex = session.execution(defs)
    gen = ex.run()
    try:
        msg = next(gen)
        while True:
            if isinstance(msg, EventTrace):
                say(msg.line)
                msg = gen.send(None)
            else:
                reply = ask_line(f"? {msg.text}: ")
                msg = gen.send(reply)
    except StopIteration:
        pass
    for a in ex.unused_definitions:
        say(f"unused definition: {a.name}")


_CLASS_ALIASES = {
    "noun": lx.COMMON_NOUN,
    "name": lx.PROPER_NOUN,
    "propernoun": lx.PROPER_NOUN,
    "verb": lx.VERB,
    "adjective": lx.ADJECTIVE,
    "adj": lx.ADJECTIVE,
    "adverb": lx.ADVERB,
}


def _repl_lex(session, args, say):
    if args and args[0] == "list":
        for e in session.lexicon.entries:
            say(f"{e.cls}|{e.lemma}")
        return
    if args and args[0] == "add" and len(args) >= 3:
        cls = _CLASS_ALIASES.get(args[1], args[1])
        entry = lx.LexEntry(
            lemma=args[2].replace("_", " "),
            cls=cls,
            gender=args[3] if len(args) > 3 else ("neut" if cls in (lx.COMMON_NOUN, lx.PROPER_NOUN) else "n/a"),
            noun_kind=args[4] if len(args) > 4 else ("count" if cls == lx.COMMON_NOUN else "n/a"),
        )
        session.add_word(entry)
        say(f"added {entry.lemma}.")
        return
    if args and args[0] == "rm" and len(args) == 2:
        session.lexicon = session.lexicon.remove_entry(args[1].replace("_", " "))
        say(f"removed {args[1]}.")
        return
    say("lex add <class> <lemma> [gender] [kind] | lex list | lex rm <lemma>")


# --- batch -----------------------------------------------------------------------

def batch(session, spec_path, emit, report_path, defs_path, out=sys.stdout):
    with open(spec_path, encoding="utf-8") as f:
        text = f.read()
    paraphrases = []
    try:
        for sentence, _ in split_sentences(text):
            sentence = " ".join(sentence.split())
            session.analyze(sentence)
            paraphrases.append(session.pending.paraphrase.text)
            session.accept()
        # batch treats untranslatable content as an error so pipelines fail loud
        translate(session.drs)
    except Diagnostic as exc:
        print(f"error [{exc.code}]: {exc.message}", file=sys.stderr)
        return _exit_code(exc)
    finally:
        if report_path:
            with open(report_path, "w", encoding="utf-8") as f:
                f.write("\n".join(paraphrases) + ("\n" if paraphrases else ""))
    if emit == "drs":
        print(session.drs_text(), file=out)
    elif emit == "clauses":
        out.write(session.clauses_text())
    elif emit == "paraphrase":
        print("\n".join(paraphrases), file=out)
    if defs_path:
        ex = session.execution(load_definitions(defs_path))
        gen = ex.run()
        try:
            msg = next(gen)
            while True:
                if isinstance(msg, EventTrace):
                    print(msg.line, file=out)
                    msg = gen.send(None)
                else:
                    print(f"error [oracle-exhausted]: unanswered request: {msg.text}",
                          file=sys.stderr)
                    return 2
        except StopIteration:
            pass
    return 0


# --- lexicon subcommand -------------------------------------------------------------

def lex_command(args):
    lexicon = lx.load(args.lexicon) if args.lexicon and _exists(args.lexicon) else lx.Lexicon()
    if args.lex_action == "list":
        sys.stdout.write(lx.dumps(lexicon))
        return 0
    if args.lex_action == "add":
        entry = lx.LexEntry(
            lemma=args.lemma.replace("_", " "),
            cls=_CLASS_ALIASES.get(args.cls, args.cls),
            gender=args.gender,
            noun_kind=args.kind,
            synonyms=tuple(args.synonym or ()),
            abbreviations=tuple(args.abbrev or ()),
        )
        lexicon = lexicon.add_entry(entry)
    elif args.lex_action == "rm":
        lexicon = lexicon.remove_entry(args.lemma.replace("_", " "))
    if args.lexicon:
        lx.save(lexicon, args.lexicon)
    return 0


def _exists(path):
    import os

    return os.path.exists(path)


# --- entry point ----------------------------------------------------------------------

def build_arg_parser():
    p = argparse.ArgumentParser(
        prog="clearspec",
        description="Compile controlled-English specifications into "
        "discourse structures and logic clauses.",
    )
    p.add_argument("--lexicon", help="lexicon file to load")
    p.add_argument("--session", help="session file to load and save back")
    p.add_argument("--batch", help="specification file to compile non-interactively")
    p.add_argument("--defs", help="definition file answering execution requests")
    p.add_argument("--emit", choices=["drs", "clauses", "paraphrase"])
    p.add_argument("--report", help="where batch mode writes all paraphrases")

    sub = p.add_subparsers(dest="command")
    lexp = sub.add_parser("lex", help="edit a lexicon file")
    lexsub = lexp.add_subparsers(dest="lex_action", required=True)
    addp = lexsub.add_parser("add")
    addp.add_argument("cls")
    addp.add_argument("lemma")
    addp.add_argument("--gender", default="neut")
    addp.add_argument("--kind", default="count")
    addp.add_argument("--synonym", action="append")
    addp.add_argument("--abbrev", action="append")
    listp = lexsub.add_parser("list")
    rmp = lexsub.add_parser("rm")
    rmp.add_argument("lemma")
    for sp in (addp, listp, rmp):
        sp.add_argument("--lexicon", help="lexicon file to edit")

    servep = sub.add_parser("serve", help="run the HTTP service")
    servep.add_argument("--host", default="127.0.0.1")
    servep.add_argument("--port", type=int, default=8722)
    return p


def main(argv=None):
    args = build_arg_parser().parse_args(argv)
    if args.command == "lex":
        return lex_command(args)
    if args.command == "serve":
        from .service import serve

        serve(args.host, args.port)
        return 0

    if args.session and _exists(args.session):
        session = Session.load(args.session)
        if args.lexicon:
            session.lexicon = lx.load(args.lexicon)
    else:
        lexicon = lx.load(args.lexicon) if args.lexicon else lx.Lexicon()
        session = Session(lexicon)

    if args.batch:
        code = batch(session, args.batch, args.emit, args.report, args.defs)
    else:
        code = repl(session)
    if args.session:
        session.save(args.session)
    return code


if __name__ == "__main__":
    sys.exit(main())
