"""Translation of the discourse structure into logic clauses.

Top-box referents become numbered skolem constants (the number is the
referent id), top-level atoms become facts, and implications become rules:
antecedent-introduced referents turn into variables, single-atom negations
in the antecedent into negation-as-failure literals, and referents
introduced in the consequent into skolem-function terms over the
antecedent variables.

Top-level negations cannot be written as facts; they are kept as denial
patterns that the query engine consults. Disjunctions are kept in the
DRS only: outside an antecedent they are not clause-translatable.
"""

from dataclasses import dataclass, field

from .drs import Atom, Group, Implies, NameArg, Not, NumArg, Or, RefArg
from .errors import NonAtomicNegation, UntranslatableDisjunction


@dataclass(frozen=True)
class SkolemConst:
    ordinal: int

    def render(self):
        return str(self.ordinal)


@dataclass(frozen=True)
class Variable:
    name: str

    def render(self):
        return self.name


@dataclass(frozen=True)
class NameConst:
    name: str

    def render(self):
        return self.name


@dataclass(frozen=True)
class NumberTerm:
    text: str

    def render(self):
        return self.text


@dataclass(frozen=True)
class SkolemFn:
    ordinal: int
    args: tuple

    def render(self):
        inner = ", ".join(a.render() for a in (SkolemConst(self.ordinal),) + self.args)
        return f"sk({inner})"


@dataclass(frozen=True)
class LogicAtom:
    pred: str
    args: tuple

    def render(self):
        return f"{self.pred}({', '.join(a.render() for a in self.args)})"


@dataclass(frozen=True)
class Literal:
    atom: LogicAtom
    negated: bool = False

    def render(self):
        return f"neg({self.atom.render()})" if self.negated else self.atom.render()


@dataclass(frozen=True)
class Clause:
    head: LogicAtom
    body: tuple = ()
    sentence_index: int = 0

    @property
    def is_fact(self):
        return not self.body

    def render(self):
        if self.is_fact:
            return f"fact({self.head.render()})."
        body = ", ".join(lit.render() for lit in self.body)
        return f"fact(({self.head.render()}:- {body}))."


@dataclass
class Denial:
    atoms: list
    sentence_index: int = 0

    def render(self):
        return "no(" + ", ".join(a.render() for a in self.atoms) + ")."


@dataclass
class Translation:
    clauses: list = field(default_factory=list)
    denials: list = field(default_factory=list)
    or_patterns: list = field(default_factory=list)  # atom lists kept query-visible


def _var_name(i):
    letters = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"
    return letters[i] if i < len(letters) else f"X{i}"


def _term(arg, varmap):
    if isinstance(arg, RefArg):
        return varmap.get(arg.id, SkolemConst(arg.id))
    if isinstance(arg, NameArg):
        return NameConst(arg.name)
    if isinstance(arg, NumArg):
        return NumberTerm(arg.text)
    raise TypeError(f"cannot translate argument {arg!r}")


def _atom(cond, varmap):
    return LogicAtom(cond.pred, tuple(_term(a, varmap) for a in cond.args))


def _check_range_restriction(clause):
    head_vars = {t for t in clause.head.args if isinstance(t, Variable)}
    for t in clause.head.args:
        if isinstance(t, SkolemFn):
            head_vars.update(a for a in t.args if isinstance(a, Variable))
    positive = set()
    for lit in clause.body:
        if not lit.negated:
            positive.update(t for t in lit.atom.args if isinstance(t, Variable))
    missing = head_vars - positive
    if missing:
        raise NonAtomicNegation(
            "rule head variables must occur in a positive antecedent atom: "
            + ", ".join(sorted(v.name for v in missing))
        )


def translate(drs, only_sentence=None, lenient=False) -> Translation:
    """Translate the top box. With `lenient`, untranslatable disjunctions
    are collected as query-visible patterns instead of raising."""
    out = Translation()
    for cond in drs.conditions:
        if only_sentence is not None and cond.sentence_index != only_sentence:
            continue
        if isinstance(cond, Atom):
            out.clauses.append(Clause(_atom(cond, {}), (), cond.sentence_index))
        elif isinstance(cond, Group):
            for m in cond.members:
                out.clauses.append(
                    Clause(
                        LogicAtom("member", (_term(m, {}), _term(cond.group, {}))),
                        (),
                        cond.sentence_index,
                    )
                )
        elif isinstance(cond, Not):
            out.denials.append(_denial(cond))
        elif isinstance(cond, Implies):
            if lenient:
                try:
                    _rules(cond, out, lenient)
                except (NonAtomicNegation, UntranslatableDisjunction):
                    out.or_patterns.append(
                        _box_pattern(cond.antecedent) + _box_pattern(cond.consequent)
                    )
            else:
                _rules(cond, out, lenient)
        elif isinstance(cond, Or):
            if not lenient:
                raise UntranslatableDisjunction(
                    "a disjunction outside an if-part has no clause form; "
                    "it stays in the discourse structure only"
                )
            out.or_patterns.append(_or_pattern(cond))
        else:
            raise TypeError(f"cannot translate {cond!r}")
    return out


def _denial(not_cond):
    varmap = {}
    for i, r in enumerate(sorted(not_cond.drs.referents, key=lambda r: r.id)):
        varmap[r.id] = Variable(_var_name(i))
    atoms = []
    for c in not_cond.drs.conditions:
        if not isinstance(c, Atom):
            raise NonAtomicNegation(
                "only plain conditions may appear under a top-level negation"
            )
        atoms.append(_atom(c, varmap))
    return Denial(atoms, not_cond.sentence_index)


def _box_pattern(box):
    """All atoms reachable in a box, with box-local referents as variables.
    Used to flag query content that only exists in untranslated conditions."""
    varmap = {}
    for i, r in enumerate(sorted(box.referents, key=lambda r: r.id)):
        varmap[r.id] = Variable(_var_name(i))
    atoms = []
    for c in box.conditions:
        if isinstance(c, Atom):
            atoms.append(_atom(c, varmap))
        elif isinstance(c, Not):
            atoms.extend(_nested_pattern(c.drs, varmap))
        elif isinstance(c, Or):
            for d in c.disjuncts:
                atoms.extend(_nested_pattern(d, varmap))
        elif isinstance(c, Implies):
            atoms.extend(_nested_pattern(c.antecedent, varmap))
            atoms.extend(_nested_pattern(c.consequent, varmap))
    return atoms


def _nested_pattern(box, outer_varmap):
    varmap = dict(outer_varmap)
    base = len(varmap)
    for i, r in enumerate(sorted(box.referents, key=lambda r: r.id)):
        varmap[r.id] = Variable(_var_name(base + i))
    inner = []
    for c in box.conditions:
        if isinstance(c, Atom):
            inner.append(_atom(c, varmap))
        elif isinstance(c, Not):
            inner.extend(_nested_pattern(c.drs, varmap))
        elif isinstance(c, Or):
            for d in c.disjuncts:
                inner.extend(_nested_pattern(d, varmap))
    return inner


def _or_pattern(or_cond):
    atoms = []
    for d in or_cond.disjuncts:
        atoms.extend(_nested_pattern(d, {}))
    return atoms


def _rules(imp, out, lenient):
    varmap = {}
    for i, r in enumerate(sorted(imp.antecedent.referents, key=lambda r: r.id)):
        varmap[r.id] = Variable(_var_name(i))
    ante_vars = tuple(varmap[r.id] for r in sorted(imp.antecedent.referents, key=lambda r: r.id))

    # each antecedent disjunction multiplies the rule bodies
    bodies = [[]]
    for c in imp.antecedent.conditions:
        if isinstance(c, Atom):
            lit = Literal(_atom(c, varmap))
            bodies = [b + [lit] for b in bodies]
        elif isinstance(c, Not):
            if c.drs.referents or len(c.drs.conditions) != 1 or not isinstance(
                c.drs.conditions[0], Atom
            ):
                raise NonAtomicNegation(
                    "negation in an if-part must cover exactly one plain condition"
                )
            lit = Literal(_atom(c.drs.conditions[0], varmap), negated=True)
            bodies = [b + [lit] for b in bodies]
        elif isinstance(c, Or):
            if c.exclusive:
                if lenient:
                    out.or_patterns.append(_or_pattern(c))
                    return
                raise UntranslatableDisjunction(
                    "an exclusive disjunction in an if-part has no clause form"
                )
            new_bodies = []
            for d in c.disjuncts:
                dvm = dict(varmap)
                base = len(varmap)
                for i, r in enumerate(sorted(d.referents, key=lambda r: r.id)):
                    dvm[r.id] = Variable(_var_name(base + i))
                lits = []
                for sub in d.conditions:
                    if not isinstance(sub, Atom):
                        raise NonAtomicNegation(
                            "only plain conditions may appear in an if-part disjunct"
                        )
                    lits.append(Literal(_atom(sub, dvm)))
                new_bodies.extend(b + lits for b in bodies)
            bodies = new_bodies
        else:
            raise NonAtomicNegation("nested if-parts are not clause-translatable")

    consmap = dict(varmap)
    for r in sorted(imp.consequent.referents, key=lambda r: r.id):
        consmap[r.id] = SkolemFn(r.id, ante_vars)
    for c in imp.consequent.conditions:
        if isinstance(c, Atom):
            head = _atom(c, consmap)
            for body in bodies:
                clause = Clause(head, tuple(body), imp.sentence_index)
                _check_range_restriction(clause)
                out.clauses.append(clause)
        elif isinstance(c, Or):
            if lenient:
                out.or_patterns.append(_or_pattern(c))
                continue
            raise UntranslatableDisjunction(
                "a disjunction in a then-part has no clause form"
            )
        elif isinstance(c, Not):
            raise NonAtomicNegation(
                "a negation in a then-part has no clause form"
            )
        else:
            raise NonAtomicNegation("nested conditions in a then-part")


def render_clauses(clauses):
    """One clause per line, in provenance order; byte-stable."""
    return "".join(c.render() + "\n" for c in clauses)


def render_denials(denials):
    return "".join(d.render() + "\n" for d in denials)
