"""Echo of each accepted sentence in the controlled language.

Everything is lowercased; every substitution made during resolution is
shown in square brackets, reconstructed (elided or distributed) material
in square brackets as well, and every attachment grouping in curly braces.
Stripping all bracket characters yields a sentence the parser accepts
again with the same meaning.
"""

import re
from dataclasses import dataclass, field

from . import parser as syn

SUBSTITUTION = "substitution"
RECONSTRUCTION = "reconstruction"
ATTACHMENT = "attachment-group"

_BRACKETS = {SUBSTITUTION: "[]", RECONSTRUCTION: "[]", ATTACHMENT: "{}"}


@dataclass
class Marker:
    start: int
    end: int
    kind: str

    def as_dict(self):
        return {"start": self.start, "end": self.end, "kind": self.kind}


@dataclass
class Paraphrase:
    text: str
    markers: list = field(default_factory=list)


def strip_markers(text):
    return re.sub(r"[\[\]{}]", "", text)


# --- group/word assembly ---------------------------------------------------------


class _Seq:
    """A flat list of words and nested marker groups."""

    def __init__(self):
        self.items = []

    def word(self, text):
        if text:
            self.items.append(text)

    def group(self, kind):
        g = _Seq()
        self.items.append((kind, g))
        return g


def _flatten(seq, out_words):
    for item in seq.items:
        if isinstance(item, str):
            out_words.append(item)
        else:
            kind, sub = item
            open_c, close_c = _BRACKETS[kind]
            inner_words = _flatten(sub, [])
            out_words.append(open_c + " ".join(inner_words) + close_c)
    return out_words


def _assemble(seq, terminator="."):
    words = _flatten(seq, [])
    text = " ".join(words) + terminator
    markers = []
    # recompute marker spans over the final string
    idx = 0
    for item in _spans(seq):
        kind, rendered = item
        start = text.index(rendered, idx)
        markers.append(Marker(start, start + len(rendered), kind))
        idx = start + 1
    return Paraphrase(text, markers)


def _spans(seq):
    out = []
    for item in seq.items:
        if isinstance(item, str):
            continue
        kind, sub = item
        inner = _flatten(sub, [])
        open_c, close_c = _BRACKETS[kind]
        out.append((kind, open_c + " ".join(inner) + close_c))
        out.extend(_spans(sub))
    return out


# --- rendering -------------------------------------------------------------------


class _Renderer:
    def __init__(self, report):
        self.report = report

    # sentences

    def sentence(self, tree, seq):
        if isinstance(tree, syn.SentCoord):
            for i, part in enumerate(tree.parts):
                if i:
                    seq.word(tree.op)
                self.sentence(part, seq)
        elif isinstance(tree, syn.IfThen):
            seq.word("if")
            self.sentence(tree.ante, seq)
            seq.word("then")
            self.sentence(tree.cons, seq)
        elif isinstance(tree, syn.Clause):
            self.clause(tree, seq)
        else:
            raise TypeError(type(tree).__name__)

    def clause(self, cl, seq):
        subj = cl.subject
        collective = any(
            isinstance(vp, syn.VerbVP) and vp.together for vp in cl.vps
        )
        if isinstance(subj, syn.CoordNP) and subj.op == "and" and not collective:
            # distributive expansion, displayed as reconstruction
            for i, part in enumerate(subj.parts):
                if i:
                    seq.word("and")
                self.np(part, seq)
                target = seq.group(RECONSTRUCTION) if i else seq
                self.vp_list(cl.vps, cl.vp_op, part.number, self.plain_np(part), target)
            return
        if isinstance(subj, (syn.CoordNP, syn.NeitherNP)):
            for i, part in enumerate(subj.parts):
                if i:
                    seq.word({"and": "and", "or": "or"}.get(getattr(subj, "op", "and"), "and"))
                self.np(part, seq)
            number = subj.number if not collective else "pl"
            self.vp_list(cl.vps, cl.vp_op, number, self.plain_np(subj), seq)
            return
        self.np(subj, seq)
        self.vp_list(cl.vps, cl.vp_op, subj.number, self.plain_np(subj), seq)

    def vp_list(self, vps, op, number, subj_text, seq):
        for i, vp in enumerate(vps):
            if i:
                seq.word(op or "and")
                recon = seq.group(RECONSTRUCTION)
                recon.word(subj_text)
                self.vp(vp, number, subj_text, seq)
            else:
                self.vp(vp, number, subj_text, seq)

    # verb phrases

    def vp(self, vp, number, subj_text, seq):
        if isinstance(vp, syn.CopulaVP):
            seq.word("is" if number == "sg" else "are")
            if vp.negated:
                seq.word("not")
            if vp.adj is not None:
                self.adj(vp.adj, seq)
            else:
                self.np(vp.prednom, seq)
            return
        if vp.negated:
            seq.word("does" if number == "sg" else "do")
            seq.word("not")
            verb_form = vp.verb.entry.forms["third-pl"]
        else:
            verb_form = vp.verb.entry.forms[
                "third-sg" if number == "sg" else "third-pl"
            ]
        target = seq.group(ATTACHMENT) if vp.pps else seq
        target.word(verb_form)
        if vp.obj is not None:
            self.object_np(vp.obj, vp, verb_form, subj_text, target)
        for pp in vp.pps:
            target.word(pp.prep.token.lower)
            self.np(pp.np, target)
        if vp.together:
            seq.word("together")

    def object_np(self, obj, vp, verb_form, subj_text, seq):
        if isinstance(obj, syn.CoordNP) and obj.op == "and":
            # elided subject+verb reinserted before each later conjunct
            for i, part in enumerate(obj.parts):
                if i:
                    seq.word("and")
                    recon = seq.group(RECONSTRUCTION)
                    recon.word(subj_text)
                    recon.word(verb_form)
                self.np(part, seq)
            return
        if isinstance(obj, syn.CoordNP):
            if obj.exclusive:
                seq.word("either")
            for i, part in enumerate(obj.parts):
                if i:
                    seq.word("or")
                self.np(part, seq)
            return
        if isinstance(obj, syn.NeitherNP):
            seq.word("neither")
            for i, part in enumerate(obj.parts):
                if i:
                    seq.word("nor")
                self.np(part, seq)
            return
        self.np(obj, seq)

    # noun phrases

    _SUB_KINDS = ("definite", "pronoun", "abbreviation", "synonym")

    def _sub_entry(self, np):
        if self.report is None:
            return None
        for e in self.report.entries:
            if e.node is np and e.kind in self._SUB_KINDS:
                return e
        return None

    def np(self, np, seq):
        entry = self._sub_entry(np)
        if isinstance(np, (syn.IndefNP, syn.DefNP, syn.NoNP)):
            outer = seq.group(ATTACHMENT) if np.relcl is not None else seq
            outer.word(np.det.token.lower)
            for adj in np.adjs:
                self.adj(adj, outer)
            if entry is not None and entry.kind == "definite":
                g = outer.group(SUBSTITUTION)
                g.word(np.noun.lemma)
            else:
                outer.word(np.noun.lemma)
            if np.relcl is not None:
                outer.word(np.relcl.pron.token.lower)
                self.vp(np.relcl.vp, "sg", None, outer)
            return
        if isinstance(np, syn.ProperNP):
            if entry is not None:
                g = seq.group(SUBSTITUTION)
                g.word(np.leaf.entry.lemma)
            else:
                seq.word(np.leaf.entry.lemma)
            return
        if isinstance(np, syn.PronounNP):
            if entry is not None:
                g = seq.group(SUBSTITUTION)
                g.word(entry.description)
            else:
                seq.word(np.leaf.token.lower)
            return
        if isinstance(np, syn.NumberNP):
            seq.word(np.leaf.token.lower)
            return
        if isinstance(np, syn.CoordNP):
            if np.exclusive:
                seq.word("either")
            for i, part in enumerate(np.parts):
                if i:
                    seq.word(np.op)
                self.np(part, seq)
            return
        raise TypeError(type(np).__name__)

    def adj(self, adj, seq):
        if adj.degree_adv is not None:
            seq.word(adj.degree_adv.token.lower)
        seq.word(adj.leaf.token.lower)

    # canonical, marker-free renderings used inside reconstructions

    def plain_np(self, np):
        entry = self._sub_entry(np)
        if isinstance(np, (syn.IndefNP, syn.DefNP, syn.NoNP)):
            words = [np.det.token.lower]
            for adj in np.adjs:
                if adj.degree_adv is not None:
                    words.append(adj.degree_adv.token.lower)
                words.append(adj.leaf.token.lower)
            words.append(np.noun.lemma)
            return " ".join(words)
        if isinstance(np, syn.ProperNP):
            return np.leaf.entry.lemma
        if isinstance(np, syn.PronounNP):
            return entry.description if entry is not None else np.leaf.token.lower
        if isinstance(np, syn.NumberNP):
            return np.leaf.token.lower
        if isinstance(np, (syn.CoordNP, syn.NeitherNP)):
            sep = " and " if getattr(np, "op", "and") == "and" else " or "
            return sep.join(self.plain_np(p) for p in np.parts)
        raise TypeError(type(np).__name__)


def render(tree, report):
    """Paraphrase one accepted declarative sentence."""
    r = _Renderer(report)
    seq = _Seq()
    r.sentence(tree, seq)
    return _assemble(seq, ".")


def plain_vp_text(vp, number="sg"):
    """Marker-free rendering of a verb phrase (used by answer generation)."""
    r = _Renderer(None)
    seq = _Seq()
    r.vp(vp, number, None, seq)
    words = _flatten(seq, [])
    return strip_markers(" ".join(words))
