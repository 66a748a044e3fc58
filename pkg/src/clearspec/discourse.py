"""Context-sensitive construction of the discourse structure.

Each accepted declarative sentence extends the cumulative DRS: indefinite
noun phrases introduce referents, pronouns and definite noun phrases
resolve against accessible referents (newest first), elided material and
plural readings are expanded by syntactic reconstruction, and negation,
implication and disjunction open nested boxes.

Proper names and unique-reference definites are projected to the top box,
so they stay visible to every later sentence.
"""

from dataclasses import dataclass, field

from . import parser as syn
from .drs import Atom, Drs, Group, Implies, NameArg, Not, NumArg, Or, RefArg, Referent, clone
from .errors import (
    NegatedDisjunctionAmbiguous,
    UnresolvedPronoun,
    UnsupportedConstruction,
)


def _pred(lemma):
    return lemma.replace(" ", "_")


@dataclass
class ReportEntry:
    kind: str                 # pronoun | definite | abbreviation | synonym |
    node: object = None       # ellipsis | distribution | attachment
    referent: int = None
    description: str = None   # replacement text for substitutions
    subject: object = None    # reconstructed subject NP (ellipsis)
    verb: object = None       # reconstructed verb leaf (ellipsis)
    attachment: object = None


@dataclass
class ResolutionReport:
    entries: list = field(default_factory=list)

    def add(self, **kw):
        entry = ReportEntry(**kw)
        self.entries.append(entry)
        return entry

    def for_node(self, node):
        for e in self.entries:
            if e.node is node:
                return e
        return None

    def of_kind(self, kind):
        return [e for e in self.entries if e.kind == kind]


def referent_description(ref):
    """How an anaphor's antecedent is echoed: '[john]' or '[the card]'."""
    if ref.named:
        return ref.sort
    return "the " + ref.sort


# --- anaphora ------------------------------------------------------------------

def _gender_matches(pron_gender, ref_gender):
    return pron_gender == "n/a" or pron_gender == ref_gender


def resolve_pronoun(entry, box):
    best = None
    for r in box.accessible_referents():
        if r.number != entry.number:
            continue
        if not _gender_matches(entry.gender, r.gender):
            continue
        if best is None or r.id > best.id:
            best = r
    return best


def resolve_definite(sort, box):
    best = None
    for r in box.accessible_referents():
        if r.named or r.sort != sort:
            continue
        if best is None or r.id > best.id:
            best = r
    return best


def resolve_anaphor(np, context):
    """Resolve a pronoun or definite NP against a DRS; returns the referent,
    or None for the unique-reference fallback of definites."""
    if isinstance(np, syn.PronounNP):
        ref = resolve_pronoun(np.leaf.entry, context)
        if ref is None:
            raise UnresolvedPronoun(
                f"no antecedent for {np.leaf.token.surface!r} agrees in "
                "gender and number",
                np.leaf.token.span,
            )
        return ref
    if isinstance(np, syn.DefNP):
        return resolve_definite(np.noun.lemma, context)
    raise TypeError("resolve_anaphor expects a pronoun or a definite NP")


# --- sentence interpretation ------------------------------------------------------

class _Builder:
    def __init__(self, context, sentence_index):
        self.top = clone(context)
        self.sent = sentence_index
        self.report = ResolutionReport()
        self._next = self.top.next_id()

    def new_referent(self, box, sort, gender, number, named=False):
        ref = Referent(self._next, sort, gender, number, self.sent, named)
        self._next += 1
        box.introduce(ref)
        return ref

    def atom(self, box, pred, args, kind):
        box.conditions.append(Atom(pred, tuple(args), kind, self.sent))

    # -- sentences

    def sentence(self, tree, box):
        if isinstance(tree, syn.SentCoord):
            if tree.op == "and":
                for part in tree.parts:
                    self.sentence(part, box)
            else:
                disjuncts = []
                for part in tree.parts:
                    d = box.subordinate()
                    self.sentence(part, d)
                    disjuncts.append(d)
                box.conditions.append(Or(disjuncts, False, self.sent))
        elif isinstance(tree, syn.IfThen):
            ante = box.subordinate()
            self.sentence(tree.ante, ante)
            cons = ante.subordinate()
            self.sentence(tree.cons, cons)
            box.conditions.append(Implies(ante, cons, self.sent))
        elif isinstance(tree, syn.Clause):
            self.clause(tree, box)
        else:
            raise TypeError(f"cannot interpret {type(tree).__name__}")

    def clause(self, cl, box):
        subj = cl.subject
        collective = any(
            isinstance(vp, syn.VerbVP) and vp.together for vp in cl.vps
        )
        if isinstance(subj, syn.CoordNP) and subj.op == "and":
            if collective and cl.each:
                raise UnsupportedConstruction(
                    "'each' and 'together' cannot combine"
                )
            if collective:
                members = [self.interpret_np(p, box) for p in subj.parts]
                gref = self.new_referent(box, "group", "n/a", "pl")
                box.conditions.append(
                    Group(RefArg(gref.id), tuple(members), self.sent)
                )
                self.vps(RefArg(gref.id), cl.vps, cl.vp_op, box, plural=True)
            else:
                # distributive reading: reconstruct one clause per member
                for i, part in enumerate(subj.parts):
                    arg = self.interpret_np(part, box)
                    self.vps(arg, cl.vps, cl.vp_op, box)
                    if i >= 1:
                        self.report.add(kind="distribution", node=part)
            return
        if isinstance(subj, syn.CoordNP):  # 'or' subject
            disjuncts = []
            for part in subj.parts:
                d = box.subordinate()
                arg = self.interpret_np(part, d)
                self.vps(arg, cl.vps, cl.vp_op, d)
                disjuncts.append(d)
            box.conditions.append(Or(disjuncts, subj.exclusive, self.sent))
            return
        if isinstance(subj, syn.NeitherNP):
            raise UnsupportedConstruction(
                "'neither ... nor' subjects are not supported; negate each "
                "sentence instead"
            )
        if collective:
            raise UnsupportedConstruction("'together' needs a coordinated subject")
        if isinstance(subj, syn.NoNP):
            nb = box.subordinate()
            arg = self.interpret_np_inner(subj, nb)
            self.vps(arg, cl.vps, cl.vp_op, nb, under_no=True)
            box.conditions.append(Not(nb, self.sent))
            return
        arg = self.interpret_np(subj, box)
        self.vps(arg, cl.vps, cl.vp_op, box)

    def vps(self, subj_arg, vps, op, box, plural=False, under_no=False):
        if op == "or":
            if under_no:
                raise NegatedDisjunctionAmbiguous(span=None)
            disjuncts = []
            for vp in vps:
                d = box.subordinate()
                self.vp(subj_arg, vp, d)
                disjuncts.append(d)
            box.conditions.append(Or(disjuncts, False, self.sent))
            return
        for i, vp in enumerate(vps):
            self.vp(subj_arg, vp, box)
            if i >= 1:
                self.report.add(kind="ellipsis", node=vp, subject=None)

    # -- verb phrases

    def vp(self, subj_arg, vp, box):
        if isinstance(vp, syn.CopulaVP):
            self.copula(subj_arg, vp, box)
            return
        obj = vp.obj
        if vp.negated:
            if isinstance(obj, syn.CoordNP) and obj.op == "or" and not obj.exclusive:
                raise NegatedDisjunctionAmbiguous()
            if isinstance(obj, syn.CoordNP) and obj.op == "or":
                # not ... either X or Y: all disjuncts are false
                for part in obj.parts:
                    nb = box.subordinate()
                    self.event(subj_arg, vp, part, nb)
                    box.conditions.append(Not(nb, self.sent))
                return
            if isinstance(obj, (syn.NoNP, syn.NeitherNP)):
                raise UnsupportedConstruction(
                    "doubled negation in a verb phrase"
                )
            nb = box.subordinate()
            if isinstance(obj, syn.CoordNP):  # whole VP inside the negation
                for part in obj.parts:
                    self.event(subj_arg, vp, part, nb)
            else:
                self.event(subj_arg, vp, obj, nb)
            box.conditions.append(Not(nb, self.sent))
            return
        if isinstance(obj, syn.CoordNP) and obj.op == "and":
            for i, part in enumerate(obj.parts):
                self.event(subj_arg, vp, part, box)
                if i >= 1:
                    self.report.add(
                        kind="ellipsis", node=part, verb=vp.verb
                    )
            return
        if isinstance(obj, syn.CoordNP):  # or / either-or object
            disjuncts = []
            for part in obj.parts:
                d = box.subordinate()
                self.event(subj_arg, vp, part, d)
                disjuncts.append(d)
            box.conditions.append(Or(disjuncts, obj.exclusive, self.sent))
            return
        if isinstance(obj, syn.NeitherNP):
            for part in obj.parts:
                nb = box.subordinate()
                self.event(subj_arg, vp, part, nb)
                box.conditions.append(Not(nb, self.sent))
            return
        if isinstance(obj, syn.NoNP):
            nb = box.subordinate()
            arg = self.interpret_np_inner(obj, nb)
            self.event_with_arg(subj_arg, vp, arg, nb)
            box.conditions.append(Not(nb, self.sent))
            return
        self.event(subj_arg, vp, obj, box)

    def event(self, subj_arg, vp, obj_np, box):
        obj_arg = self.interpret_np(obj_np, box) if obj_np is not None else None
        self.event_with_arg(subj_arg, vp, obj_arg, box)

    def event_with_arg(self, subj_arg, vp, obj_arg, box):
        args = [subj_arg]
        if obj_arg is not None:
            args.append(obj_arg)
        pred = _pred(vp.verb.entry.lemma)
        preps = []
        for pp in vp.pps:
            pred += "_" + _pred(pp.prep.entry.lemma)
            preps.append(pp.prep.entry.lemma)
            args.append(self.interpret_np(pp.np, box))
        box.conditions.append(
            Atom(pred, tuple(args), "verb", self.sent, tuple(preps))
        )

    def copula(self, subj_arg, vp, box):
        target = box.subordinate() if vp.negated else box
        if vp.adj is not None:
            self.atom(target, vp.adj.predicate, [subj_arg], "adj")
        else:
            pn = vp.prednom
            for adj in pn.adjs:
                self.atom(target, adj.predicate, [subj_arg], "adj")
            self.atom(target, _pred(pn.noun.lemma), [subj_arg], "noun")
            if pn.relcl is not None:
                self.vp(subj_arg, pn.relcl.vp, target)
        if vp.negated:
            box.conditions.append(Not(target, self.sent))

    # -- noun phrases

    def interpret_np(self, np, box):
        if isinstance(np, syn.IndefNP):
            return self.interpret_np_inner(np, box)
        if isinstance(np, syn.DefNP):
            ref = resolve_definite(np.noun.lemma, box)
            if ref is not None:
                self.report.add(
                    kind="definite", node=np, referent=ref.id,
                    description=np.noun.lemma,
                )
                if np.relcl is not None:
                    self.vp(RefArg(ref.id), np.relcl.vp, box)
                return RefArg(ref.id)
            # unique-reference: the object exists, project it to the top box
            return self.interpret_np_inner(np, box.top())
        if isinstance(np, syn.ProperNP):
            return self.proper(np, box)
        if isinstance(np, syn.PronounNP):
            ref = resolve_pronoun(np.leaf.entry, box)
            if ref is None:
                raise UnresolvedPronoun(
                    f"no antecedent for {np.leaf.token.surface!r} agrees "
                    "in gender and number",
                    np.leaf.token.span,
                )
            self.report.add(
                kind="pronoun", node=np, referent=ref.id,
                description=referent_description(ref),
            )
            return RefArg(ref.id)
        if isinstance(np, syn.NumberNP):
            return NumArg(np.value)
        raise UnsupportedConstruction(
            f"cannot use {type(np).__name__} in this position"
        )

    def interpret_np_inner(self, np, box):
        """Introduce a fresh referent for an (in)definite NP inside `box`."""
        entry = np.noun.entry
        ref = self.new_referent(box, entry.lemma, entry.gender, "sg")
        arg = RefArg(ref.id)
        for adj in np.adjs:
            self.atom(box, adj.predicate, [arg], "adj")
        self.atom(box, _pred(entry.lemma), [arg], "noun")
        if np.relcl is not None:
            self.vp(arg, np.relcl.vp, box)
        return arg

    def proper(self, np, box):
        name = np.leaf.entry.lemma
        top = box.top()
        existing = None
        for r in top.referents:
            if r.named and r.sort == name:
                existing = r
                break
        if existing is None:
            existing = self.new_referent(
                top, name, np.leaf.entry.gender, "sg", named=True
            )
            self.atom(
                top, "named", [RefArg(existing.id), NameArg(_pred(name))], "named"
            )
        if np.via in ("abbreviation", "synonym"):
            self.report.add(
                kind=np.via, node=np, referent=existing.id, description=name
            )
        return RefArg(existing.id)


def extend_drs(result, context: Drs, sentence_index: int):
    """Interpret one parsed declarative sentence in context.

    Returns the extended DRS (the context itself is left untouched) and the
    resolution report feeding the paraphrase.
    """
    if result.kind != "declarative":
        raise UnsupportedConstruction("questions do not extend the discourse")
    b = _Builder(context, sentence_index)
    b.sentence(result.tree, b.top)
    for att in result.attachments:
        b.report.add(kind="attachment", attachment=att)
    _check_accessibility(b.top)
    return b.top, b.report


def _check_accessibility(top):
    """Structural invariant: conditions only mention referents visible from
    their own box."""
    def visit(box):
        visible = {r.id for r in box.accessible_referents()}
        for cond in box.conditions:
            if isinstance(cond, Atom):
                for a in cond.args:
                    if isinstance(a, RefArg):
                        assert a.id in visible, f"referent {a.id} leaked"
            elif isinstance(cond, Group):
                for a in (cond.group, *cond.members):
                    if isinstance(a, RefArg):
                        assert a.id in visible, f"referent {a.id} leaked"
            elif isinstance(cond, Not):
                visit(cond.drs)
            elif isinstance(cond, Implies):
                visit(cond.antecedent)
                visit(cond.consequent)
            elif isinstance(cond, Or):
                for d in cond.disjuncts:
                    visit(d)

    visit(top)


def referent_table(drs):
    """id -> referent info for the whole structure (engine and executor use)."""
    return {r.id: r for r in drs.all_referents()}
