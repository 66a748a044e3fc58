"""One discourse session: lexicon, cumulative DRS, clause KB, pending analysis.

A sentence is first analyzed (parse, resolve, paraphrase) and held pending;
the user then accepts it (its clauses are assimilated) or rejects it (it is
discarded). Questions never change the session. Accepted sentence texts and
lexicon additions are what a saved session replays.
"""

import json
from dataclasses import dataclass, field

from . import drs as drsmod
from . import lexicon as lx
from .discourse import extend_drs, referent_table
from .engine import KnowledgeBase, answer_lines, build_query
from .errors import Diagnostic, UnsupportedConstruction
from .executor import Execution
from .paraphrase import render
from .parser import parse_sentence
from .tokens import split_sentences, tokenize
from .translator import render_clauses, render_denials, translate


@dataclass
class Analysis:
    text: str
    result: object
    drs: object
    report: object
    paraphrase: object
    sentence_index: int


@dataclass
class AcceptedSentence:
    text: str
    paraphrase: str


@dataclass
class QueryResult:
    kind: str
    answers: list
    status: str = "ok"
    note: str = None


class Session:
    def __init__(self, lexicon=None):
        self.lexicon = lexicon or lx.Lexicon()
        self.drs = drsmod.Drs()
        self.kb = KnowledgeBase()
        self.accepted = []
        self.pending = None

    # -- sentence lifecycle

    def analyze(self, text):
        """Parse and resolve one declarative sentence; hold it pending."""
        text = text.strip()
        pieces = split_sentences(text)
        if len(pieces) != 1:
            raise UnsupportedConstruction("one sentence at a time, please")
        tokens = tokenize(text, self.lexicon)
        result = parse_sentence(tokens, self.lexicon)
        if result.kind != "declarative":
            raise UnsupportedConstruction(
                "that is a question; ask it with 'ask'"
            )
        index = len(self.accepted)
        new_drs, report = extend_drs(result, self.drs, index)
        paraphrase = render(result.tree, report)
        self.pending = Analysis(text, result, new_drs, report, paraphrase, index)
        return self.pending

    def accept(self):
        """Commit the pending sentence; returns the full clause text."""
        if self.pending is None:
            raise UnsupportedConstruction("no pending sentence to accept")
        p = self.pending
        translation = translate(p.drs, only_sentence=p.sentence_index, lenient=True)
        self.drs = p.drs
        self.kb = self.kb.assimilate(
            p.sentence_index, translation, referent_table(self.drs)
        )
        self.accepted.append(AcceptedSentence(p.text, p.paraphrase.text))
        self.pending = None
        return self.clauses_text()

    def reject(self):
        if self.pending is None:
            raise UnsupportedConstruction("no pending sentence to reject")
        self.pending = None

    # -- inspection

    def drs_text(self):
        return drsmod.render(self.drs)

    def clauses_text(self):
        text = render_clauses(self.kb.clauses)
        if self.kb.denials:
            text += render_denials(self.kb.denials)
        return text

    def paraphrase_text(self):
        return "\n".join(s.paraphrase for s in self.accepted)

    # -- queries

    def ask(self, text):
        text = text.strip()
        tokens = tokenize(text, self.lexicon)
        result = parse_sentence(tokens, self.lexicon)
        if result.kind == "declarative":
            raise UnsupportedConstruction(
                "that is a statement; enter it as a sentence"
            )
        query = build_query(result, self.drs)
        lines, status, note = answer_lines(query, self.kb)
        return QueryResult(result.kind, lines, status, note)

    # -- lexicon editing

    def add_word(self, entry: lx.LexEntry):
        self.lexicon = self.lexicon.add_entry(entry)
        return self.lexicon.version

    # -- execution

    def execution(self, definitions=None):
        return Execution(self.drs, self.kb, definitions, self.lexicon)

    # -- persistence: lexicon records plus accepted sentences, replayed on load

    def save(self, path):
        data = {
            "lexicon": lx.dumps(self.lexicon),
            "sentences": [s.text for s in self.accepted],
        }
        with open(path, "w", encoding="utf-8") as f:
            json.dump(data, f, indent=2)

    @classmethod
    def load(cls, path):
        with open(path, encoding="utf-8") as f:
            data = json.load(f)
        session = cls(lx.loads(data["lexicon"]))
        for text in data["sentences"]:
            session.analyze(text)
            session.accept()
        return session
