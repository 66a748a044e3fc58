"""Independent reference evaluators used as test oracles.

`minimal_model` computes the stratified minimal model of a clause set
bottom-up by exhaustive grounding (no resolution, no unification search),
so it shares no code path with the SLD engine it checks.

`drs_satisfied` and `clauses_satisfied` give classical first-order
satisfaction over a finite domain for the all-models agreement checks.
"""

import itertools

from clearspec.drs import Atom, Drs, Implies, NameArg, Not, NumArg, Or, RefArg
from clearspec.translator import (
    NameConst,
    NumberTerm,
    SkolemConst,
    SkolemFn,
    Variable,
)


def _ground_term(term, env):
    if isinstance(term, Variable):
        return env[term]
    if isinstance(term, SkolemConst):
        return ("sk", term.ordinal)
    if isinstance(term, NameConst):
        return ("name", term.name)
    if isinstance(term, NumberTerm):
        return ("num", term.text)
    if isinstance(term, SkolemFn):
        return ("skfn", term.ordinal, tuple(_ground_term(a, env) for a in term.args))
    raise TypeError(term)


def _ground_atom(atom, env):
    return (atom.pred, tuple(_ground_term(a, env) for a in atom.args))


def _clause_vars(clause):
    seen = []

    def visit(term):
        if isinstance(term, Variable) and term not in seen:
            seen.append(term)
        if isinstance(term, SkolemFn):
            for a in term.args:
                visit(a)

    for a in clause.head.args:
        visit(a)
    for lit in clause.body:
        for a in lit.atom.args:
            visit(a)
    return seen


def herbrand_constants(clauses):
    consts = []

    def visit(term):
        if isinstance(term, (SkolemConst, NameConst, NumberTerm)):
            g = _ground_term(term, {})
            if g not in consts:
                consts.append(g)
        if isinstance(term, SkolemFn):
            for a in term.args:
                visit(a)

    for c in clauses:
        for a in c.head.args:
            visit(a)
        for lit in c.body:
            for x in lit.atom.args:
                visit(x)
    return consts


def stratify(clauses):
    """Predicate -> stratum, or None when the program is not stratifiable."""
    preds = {c.head.pred for c in clauses}
    for c in clauses:
        for lit in c.body:
            preds.add(lit.atom.pred)
    stratum = {p: 0 for p in preds}
    for _ in range(len(preds) + 1):
        changed = False
        for c in clauses:
            h = c.head.pred
            for lit in c.body:
                need = stratum[lit.atom.pred] + (1 if lit.negated else 0)
                if stratum[h] < need:
                    stratum[h] = need
                    changed = True
        if not changed:
            return stratum
    return None


def minimal_model(clauses, extra_constants=()):
    """Stratified minimal model as a set of ground (pred, args) tuples."""
    constants = herbrand_constants(clauses)
    for c in extra_constants:
        if c not in constants:
            constants.append(c)
    if not constants:
        constants = [("sk", 0)]
    stratum = stratify(clauses)
    assert stratum is not None, "oracle needs a stratifiable program"
    model = set()
    for level in range(max(stratum.values()) + 1):
        level_clauses = [c for c in clauses if stratum[c.head.pred] == level]
        changed = True
        while changed:
            changed = False
            for c in level_clauses:
                vars_ = _clause_vars(c)
                for combo in itertools.product(constants, repeat=len(vars_)):
                    env = dict(zip(vars_, combo))
                    ok = True
                    for lit in c.body:
                        g = _ground_atom(lit.atom, env)
                        holds = g in model
                        if lit.negated:
                            holds = not holds
                        if not holds:
                            ok = False
                            break
                    if ok:
                        head = _ground_atom(c.head, env)
                        if head not in model:
                            model.add(head)
                            changed = True
    return model


# --- classical finite-domain satisfaction -------------------------------------------


def _drs_arg_value(arg, env):
    if isinstance(arg, RefArg):
        return env[arg.id]
    if isinstance(arg, NameArg):
        return ("name", arg.name)
    if isinstance(arg, NumArg):
        return ("num", arg.text)
    raise TypeError(arg)


def drs_satisfied(drs, interp, domain, env=None):
    """Classical satisfaction: each box existentially quantifies its
    referents, Implies quantifies its antecedent universally."""
    env = dict(env or {})
    # ids already fixed by the caller (skolem constants) are not re-quantified
    local = [r.id for r in drs.referents if r.id not in env]

    def conditions_hold(e):
        for cond in drs.conditions:
            if isinstance(cond, Atom):
                g = (cond.pred, tuple(_drs_arg_value(a, e) for a in cond.args))
                if g not in interp:
                    return False
            elif isinstance(cond, Not):
                if drs_satisfied(cond.drs, interp, domain, e):
                    return False
            elif isinstance(cond, Implies):
                ante = cond.antecedent
                ante_ids = [r.id for r in ante.referents]
                for combo in itertools.product(domain, repeat=len(ante_ids)):
                    e2 = dict(e)
                    e2.update(zip(ante_ids, combo))
                    ante_box = Drs(referents=[], conditions=ante.conditions)
                    if drs_satisfied(ante_box, interp, domain, e2):
                        if not drs_satisfied(cond.consequent, interp, domain, e2):
                            return False
            elif isinstance(cond, Or):
                if not any(
                    drs_satisfied(d, interp, domain, e) for d in cond.disjuncts
                ):
                    return False
            else:
                raise TypeError(cond)
        return True

    for combo in itertools.product(domain, repeat=len(local)):
        e = dict(env)
        e.update(zip(local, combo))
        if conditions_hold(e):
            return True
    return False


def clauses_satisfied(clauses, interp, domain):
    """Classical satisfaction of each clause as a universally quantified
    implication (negation-free clauses only)."""
    for c in clauses:
        vars_ = _clause_vars(c)
        for combo in itertools.product(domain, repeat=len(vars_)):
            env = dict(zip(vars_, combo))
            body_holds = all(
                _ground_atom(l.atom, env) in interp for l in c.body if not l.negated
            )
            if body_holds and _ground_atom(c.head, env) not in interp:
                return False
    return True
