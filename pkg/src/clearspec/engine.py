"""Knowledge base, deductive query answering, and answer generation.

Queries run SLD-style resolution over the clauses in provenance order,
depth first, with negation-as-failure for neg literals (which must be
ground when called). A failed yes/no proof answers "no" (closed world),
except when the depth bound trips or a neg literal flounders, which answer
"unknown". Denial patterns recorded from top-level negations force "no",
and content that only exists inside an untranslated disjunction answers
"unknown" with a note.
"""

import itertools
from dataclasses import dataclass, field

from . import parser as syn
from .discourse import resolve_definite, resolve_pronoun
from .drs import NumArg
from .errors import UnresolvedPronoun, UnsupportedConstruction
from .paraphrase import plain_vp_text
from .translator import (
    Literal,
    LogicAtom,
    NameConst,
    NumberTerm,
    SkolemConst,
    SkolemFn,
    Variable,
)

DEFAULT_DEPTH_LIMIT = 512


class DepthLimitExceeded(Exception):
    pass


class Floundering(Exception):
    def __init__(self, literal):
        self.literal = literal
        super().__init__(f"non-ground negated literal {literal.render()}")


@dataclass
class KnowledgeBase:
    """Append-only clause store with per-sentence provenance."""

    clauses: list = field(default_factory=list)
    denials: list = field(default_factory=list)
    or_patterns: list = field(default_factory=list)
    referents: dict = field(default_factory=dict)
    version: int = 0

    def assimilate(self, sentence_index, translation, referents):
        """New KB version with this sentence's clauses; re-assimilating the
        same sentence index replaces its previous contribution."""
        kb = KnowledgeBase(
            [c for c in self.clauses if c.sentence_index != sentence_index],
            [d for d in self.denials if d.sentence_index != sentence_index],
            list(self.or_patterns),
            dict(self.referents),
            self.version + 1,
        )
        kb.clauses.extend(translation.clauses)
        kb.denials.extend(translation.denials)
        kb.or_patterns.extend(translation.or_patterns)
        kb.referents.update(referents)
        return kb

    def retract(self, sentence_index):
        return KnowledgeBase(
            [c for c in self.clauses if c.sentence_index != sentence_index],
            [d for d in self.denials if d.sentence_index != sentence_index],
            list(self.or_patterns),
            dict(self.referents),
            self.version + 1,
        )

    def facts(self):
        return [c.head for c in self.clauses if c.is_fact]


@dataclass
class Query:
    literals: list
    wh_var: Variable = None
    kind: str = "yes-no"          # yes-no | wh
    tree: object = None
    text: str = ""


# --- unification -------------------------------------------------------------

def walk(term, subst):
    while isinstance(term, Variable) and term in subst:
        term = subst[term]
    return term


def unify(a, b, subst):
    a = walk(a, subst)
    b = walk(b, subst)
    if a == b:
        return subst
    if isinstance(a, Variable):
        s = dict(subst)
        s[a] = b
        return s
    if isinstance(b, Variable):
        s = dict(subst)
        s[b] = a
        return s
    if isinstance(a, SkolemFn) and isinstance(b, SkolemFn):
        if a.ordinal != b.ordinal or len(a.args) != len(b.args):
            return None
        for x, y in zip(a.args, b.args):
            subst = unify(x, y, subst)
            if subst is None:
                return None
        return subst
    return None


def unify_atoms(a, b, subst):
    if a.pred != b.pred or len(a.args) != len(b.args):
        return None
    for x, y in zip(a.args, b.args):
        subst = unify(x, y, subst)
        if subst is None:
            return None
    return subst


def resolve_term(term, subst):
    term = walk(term, subst)
    if isinstance(term, SkolemFn):
        return SkolemFn(term.ordinal, tuple(resolve_term(a, subst) for a in term.args))
    return term


def resolve_atom(atom, subst):
    return LogicAtom(atom.pred, tuple(resolve_term(a, subst) for a in atom.args))


def is_ground(atom):
    def g(t):
        if isinstance(t, Variable):
            return False
        if isinstance(t, SkolemFn):
            return all(g(a) for a in t.args)
        return True

    return all(g(a) for a in atom.args)


# --- resolution ----------------------------------------------------------------

_fresh_counter = itertools.count()


def _rename_clause(clause):
    mapping = {}

    def rn(term):
        if isinstance(term, Variable):
            if term not in mapping:
                mapping[term] = Variable(f"{term.name}~{next(_fresh_counter)}")
            return mapping[term]
        if isinstance(term, SkolemFn):
            return SkolemFn(term.ordinal, tuple(rn(a) for a in term.args))
        return term

    head = LogicAtom(clause.head.pred, tuple(rn(a) for a in clause.head.args))
    body = tuple(
        Literal(LogicAtom(l.atom.pred, tuple(rn(a) for a in l.atom.args)), l.negated)
        for l in clause.body
    )
    return head, body


def _solve(goals, subst, kb, depth, limit):
    if depth > limit:
        raise DepthLimitExceeded()
    if not goals:
        yield subst
        return
    lit, rest = goals[0], goals[1:]
    atom = resolve_atom(lit.atom, subst)
    if lit.negated:
        if not is_ground(atom):
            raise Floundering(Literal(atom, True))
        provable = False
        for _ in _solve([Literal(atom)], {}, kb, depth + 1, limit):
            provable = True
            break
        if not provable:
            yield from _solve(rest, subst, kb, depth, limit)
        return
    for clause in kb.clauses:
        if clause.head.pred != atom.pred or len(clause.head.args) != len(atom.args):
            continue
        head, body = _rename_clause(clause)
        s2 = unify_atoms(atom, head, subst)
        if s2 is None:
            continue
        yield from _solve(list(body) + rest, s2, kb, depth + 1, limit)


def _denied(query, kb):
    """True when some denial pattern subsumes the query's positive atoms."""
    atoms = [l.atom for l in query.literals if not l.negated]
    for denial in kb.denials:
        if _subsumes(denial.atoms, atoms, {}):
            return True
    return False


def _subsumes(pattern, atoms, subst):
    if not pattern:
        return True
    first, rest = pattern[0], pattern[1:]
    for a in atoms:
        s2 = unify_atoms(first, a, subst)
        if s2 is not None and _subsumes(rest, atoms, s2):
            return True
    return False


def _touches_disjunction(query, kb):
    for lit in query.literals:
        for pattern in kb.or_patterns:
            for atom in pattern:
                if unify_atoms(lit.atom, atom, {}) is not None:
                    return True
    return False


def prove(query, kb, depth_limit=DEFAULT_DEPTH_LIMIT):
    """Yes/no proof: ('yes'|'no'|'unknown', note)."""
    if _denied(query, kb):
        return "no", "denied by a negative statement"
    try:
        for _ in _solve(list(query.literals), {}, kb, 0, depth_limit):
            return "yes", None
    except DepthLimitExceeded:
        return "unknown", f"proof depth limit ({depth_limit}) exceeded"
    except Floundering as f:
        return "unknown", f"cannot evaluate {f.literal.render()}"
    if _touches_disjunction(query, kb):
        return "unknown", "the knowledge base holds this only in untranslated form"
    return "no", None


def solve(query, kb, depth_limit=DEFAULT_DEPTH_LIMIT):
    """All distinct bindings of the distinguished variable, in proof order.

    Returns (bindings, status, note); status is 'ok' or 'unknown'.
    """
    if query.wh_var is None:
        raise ValueError("solve needs a wh query")
    if _denied(query, kb):
        return [], "ok", "denied by a negative statement"
    seen = []
    try:
        for subst in _solve(list(query.literals), {}, kb, 0, depth_limit):
            term = resolve_term(query.wh_var, subst)
            if term not in seen:
                seen.append(term)
    except DepthLimitExceeded:
        return seen, "unknown", f"proof depth limit ({depth_limit}) exceeded"
    except Floundering as f:
        return seen, "unknown", f"cannot evaluate {f.literal.render()}"
    note = None
    if not seen and _touches_disjunction(query, kb):
        return seen, "unknown", "the knowledge base holds this only in untranslated form"
    return seen, "ok", note


# --- query construction -----------------------------------------------------------

class _QueryBuilder:
    def __init__(self, context):
        self.context = context
        self.literals = []
        self._n = 0

    def fresh(self, name=None):
        self._n += 1
        return Variable(name or f"Q{self._n}")

    def atom(self, pred, args):
        self.literals.append(Literal(LogicAtom(pred, tuple(args))))

    def np_term(self, np):
        if isinstance(np, syn.DefNP):
            ref = resolve_definite(np.noun.lemma, self.context)
            if ref is not None:
                return SkolemConst(ref.id)
            v = self.fresh()
            for adj in np.adjs:
                self.atom(adj.predicate, [v])
            self.atom(np.noun.lemma.replace(" ", "_"), [v])
            self._relcl(np, v)
            return v
        if isinstance(np, syn.IndefNP):
            v = self.fresh()
            for adj in np.adjs:
                self.atom(adj.predicate, [v])
            self.atom(np.noun.lemma.replace(" ", "_"), [v])
            self._relcl(np, v)
            return v
        if isinstance(np, syn.ProperNP):
            name = np.leaf.entry.lemma
            for r in self.context.referents:
                if r.named and r.sort == name:
                    return SkolemConst(r.id)
            v = self.fresh()
            self.atom("named", [v, NameConst(name.replace(" ", "_"))])
            return v
        if isinstance(np, syn.PronounNP):
            ref = resolve_pronoun(np.leaf.entry, self.context)
            if ref is None:
                raise UnresolvedPronoun(
                    f"no antecedent for {np.leaf.token.surface!r} agrees in "
                    "gender and number",
                    np.leaf.token.span,
                )
            return SkolemConst(ref.id)
        if isinstance(np, syn.NumberNP):
            return NumberTerm(np.value)
        raise UnsupportedConstruction(
            f"{type(np).__name__} is not supported in questions"
        )

    def _relcl(self, np, term):
        if np.relcl is not None:
            self.vp(term, np.relcl.vp)

    def vp(self, subj, vp):
        if isinstance(vp, syn.CopulaVP):
            if vp.adj is not None:
                self.atom(vp.adj.predicate, [subj])
            else:
                pn = vp.prednom
                for adj in pn.adjs:
                    self.atom(adj.predicate, [subj])
                self.atom(pn.noun.lemma.replace(" ", "_"), [subj])
                self._relcl(pn, subj)
            return
        args = [subj]
        pred = vp.verb.entry.lemma.replace(" ", "_")
        if vp.obj is not None:
            args.append(self.np_term(vp.obj))
        for pp in vp.pps:
            pred += "_" + pp.prep.entry.lemma.replace(" ", "_")
            args.append(self.np_term(pp.np))
        self.atom(pred, args)


def build_query(result, context):
    """Turn a parsed question into a query against the session's discourse."""
    tree = result.tree
    b = _QueryBuilder(context)
    if isinstance(tree, syn.YesNoQ):
        clause = tree.clause
        subj = b.np_term(clause.subject)
        for vp in clause.vps:
            b.vp(subj, vp)
        return Query(b.literals, None, "yes-no", tree, "")
    if isinstance(tree, syn.WhQ):
        w = Variable("W")
        b.vp(w, tree.vp)
        return Query(b.literals, w, "wh", tree, "")
    raise UnsupportedConstruction("not a question")


# --- answer generation --------------------------------------------------------------

def _article(word):
    return "an" if word[:1] in "aeiou" else "a"


def describe_term(term, referents):
    """'[a customer]' for sorted skolems, '[simplemat]' for named ones."""
    if isinstance(term, SkolemConst):
        ref = referents.get(term.ordinal)
        if ref is None:
            return f"[{term.ordinal}]"
        if ref.named:
            return f"[{ref.sort.replace(' ', '_')}]"
        return f"[{_article(ref.sort)} {ref.sort}]"
    if isinstance(term, NameConst):
        return f"[{term.name}]"
    if isinstance(term, NumberTerm):
        return term.text
    if isinstance(term, SkolemFn):
        return f"[{term.render()}]"
    return term.render()


def generate_answer(term, referents, query):
    """Restate a wh question declaratively with the binding substituted."""
    subject = describe_term(term, referents)
    vp = plain_vp_text(query.tree.vp, "sg")
    return f"{subject} {vp}."


def answer_lines(query, kb, depth_limit=DEFAULT_DEPTH_LIMIT):
    """Rendered 'Answer: ...' lines plus a status note, fully materialized."""
    if query.kind == "yes-no":
        outcome, note = prove(query, kb, depth_limit)
        if outcome == "unknown":
            return [f"Answer: unknown ({note})"], "unknown", note
        return [f"Answer: {outcome}"], "ok", note
    bindings, status, note = solve(query, kb, depth_limit)
    lines = [f"Answer: {generate_answer(t, kb.referents, query)}" for t in bindings]
    return lines, status, note
