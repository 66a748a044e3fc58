"""Discourse representation structures.

One top-level box holds the whole discourse: an ordered referent list plus
an ordered condition list. Conditions are either atoms over referents,
name constants and numbers, or nested boxes (negation, implication,
disjunction) plus a grouping condition for collective readings.
"""

from dataclasses import dataclass, field


@dataclass(frozen=True)
class RefArg:
    id: int

    def render(self):
        return str(self.id)


@dataclass(frozen=True)
class NameArg:
    name: str

    def render(self):
        return self.name


@dataclass(frozen=True)
class NumArg:
    text: str

    def render(self):
        return self.text


@dataclass
class Referent:
    id: int
    sort: str                 # noun lemma, or the proper name for named referents
    gender: str
    number: str
    sentence_index: int
    named: bool = False

    @property
    def home(self):
        return getattr(self, "_home", None)


@dataclass
class Atom:
    pred: str
    args: tuple
    kind: str = "verb"        # noun | adj | verb | named | member
    sentence_index: int = 0
    preps: tuple = ()         # trailing preposition lemmas of an event atom

    def render(self):
        inner = ", ".join(a.render() for a in self.args)
        return f"{self.pred}({inner})"


@dataclass
class Not:
    drs: "Drs"
    sentence_index: int = 0


@dataclass
class Implies:
    antecedent: "Drs"
    consequent: "Drs"
    sentence_index: int = 0


@dataclass
class Or:
    disjuncts: list
    exclusive: bool = False
    sentence_index: int = 0


@dataclass
class Group:
    group: RefArg
    members: tuple
    sentence_index: int = 0

    def render(self):
        inner = ", ".join(m.render() for m in self.members)
        return f"group({self.group.render()}, [{inner}])"


@dataclass
class Drs:
    referents: list = field(default_factory=list)
    conditions: list = field(default_factory=list)
    parent: "Drs" = None

    def subordinate(self):
        return Drs(parent=self)

    def introduce(self, referent):
        self.referents.append(referent)
        referent._home = self

    def accessible_referents(self):
        """Referents visible from this box: its own plus the superordinate chain."""
        box = self
        seen = []
        while box is not None:
            seen.extend(box.referents)
            box = box.parent
        return seen

    def all_referents(self):
        out = list(self.referents)
        for c in self.conditions:
            for sub in _subboxes(c):
                out.extend(sub.all_referents())
        return out

    def next_id(self):
        top = self
        while top.parent is not None:
            top = top.parent
        ids = [r.id for r in top.all_referents()]
        return max(ids) + 1 if ids else 0

    def top(self):
        box = self
        while box.parent is not None:
            box = box.parent
        return box


def _subboxes(cond):
    if isinstance(cond, Not):
        return [cond.drs]
    if isinstance(cond, Implies):
        return [cond.antecedent, cond.consequent]
    if isinstance(cond, Or):
        return list(cond.disjuncts)
    return []


# --- pretty printer -----------------------------------------------------------

def render(drs, indent=0):
    """Text layout: a referent list line, then one line per condition.
    Nested boxes are labeled IF:/THEN:/NOT:/OR: and indented two spaces."""
    pad = " " * indent
    lines = [pad + "[" + ", ".join(str(r.id) for r in drs.referents) + "]"]
    for cond in drs.conditions:
        if isinstance(cond, (Atom, Group)):
            lines.append(pad + cond.render())
        elif isinstance(cond, Not):
            lines.append(pad + "NOT:")
            lines.append(render(cond.drs, indent + 2))
        elif isinstance(cond, Implies):
            lines.append(pad + "IF:")
            lines.append(render(cond.antecedent, indent + 2))
            lines.append(pad + "THEN:")
            lines.append(render(cond.consequent, indent + 2))
        elif isinstance(cond, Or):
            label = "EITHER-OR:" if cond.exclusive else "OR:"
            for i, d in enumerate(cond.disjuncts):
                lines.append(pad + (label if i == 0 else "OR:"))
                lines.append(render(d, indent + 2))
        else:
            raise TypeError(f"cannot render {cond!r}")
    return "\n".join(lines)


# --- structural copy ------------------------------------------------------------

def clone(drs, parent=None):
    new = Drs(parent=parent)
    for r in drs.referents:
        new.introduce(
            Referent(r.id, r.sort, r.gender, r.number, r.sentence_index, r.named)
        )
    for c in drs.conditions:
        new.conditions.append(_clone_cond(c, new))
    return new


def _clone_cond(cond, parent):
    if isinstance(cond, Atom):
        return Atom(
            cond.pred, tuple(cond.args), cond.kind, cond.sentence_index, cond.preps
        )
    if isinstance(cond, Group):
        return Group(cond.group, tuple(cond.members), cond.sentence_index)
    if isinstance(cond, Not):
        return Not(clone(cond.drs, parent), cond.sentence_index)
    if isinstance(cond, Implies):
        ante = clone(cond.antecedent, parent)
        cons = clone(cond.consequent, ante)
        return Implies(ante, cons, cond.sentence_index)
    if isinstance(cond, Or):
        return Or(
            [clone(d, parent) for d in cond.disjuncts],
            cond.exclusive,
            cond.sentence_index,
        )
    raise TypeError(f"cannot clone {cond!r}")


# --- alpha equivalence -----------------------------------------------------------

def alpha_equal(a, b):
    """True when the two DRSs are equal up to a bijective renaming of
    referent ids. Condition lists are compared as multisets, recursively."""
    return _match_box(a, b, {}) is not None


def _match_box(a, b, mapping):
    if len(a.referents) != len(b.referents) or len(a.conditions) != len(b.conditions):
        return None
    return _match_refs(a, b, list(a.referents), mapping)


def _match_refs(a, b, pending, mapping):
    if not pending:
        return _match_conds(list(a.conditions), list(b.conditions), mapping)
    ra = pending[0]
    used = set(mapping.values())
    for rb in b.referents:
        if rb.id in used:
            continue
        if (ra.sort, ra.gender, ra.number, ra.named) != (
            rb.sort,
            rb.gender,
            rb.number,
            rb.named,
        ):
            continue
        m2 = dict(mapping)
        m2[ra.id] = rb.id
        result = _match_refs(a, b, pending[1:], m2)
        if result is not None:
            return result
    return None


def _match_conds(conds_a, conds_b, mapping):
    if not conds_a:
        return mapping if not conds_b else None
    ca = conds_a[0]
    for i, cb in enumerate(conds_b):
        m2 = _match_cond(ca, cb, mapping)
        if m2 is not None:
            rest = _match_conds(conds_a[1:], conds_b[:i] + conds_b[i + 1 :], m2)
            if rest is not None:
                return rest
    return None


def _match_cond(ca, cb, mapping):
    if type(ca) is not type(cb):
        return None
    if isinstance(ca, Atom):
        if ca.pred != cb.pred or len(ca.args) != len(cb.args):
            return None
        m = dict(mapping)
        for x, y in zip(ca.args, cb.args):
            m = _match_arg(x, y, m)
            if m is None:
                return None
        return m
    if isinstance(ca, Group):
        m = _match_arg(ca.group, cb.group, dict(mapping))
        if m is None or len(ca.members) != len(cb.members):
            return None
        for x, y in zip(ca.members, cb.members):
            m = _match_arg(x, y, m)
            if m is None:
                return None
        return m
    if isinstance(ca, Not):
        return _match_box(ca.drs, cb.drs, mapping)
    if isinstance(ca, Implies):
        m = _match_box(ca.antecedent, cb.antecedent, mapping)
        if m is None:
            return None
        return _match_box(ca.consequent, cb.consequent, m)
    if isinstance(ca, Or):
        if ca.exclusive != cb.exclusive or len(ca.disjuncts) != len(cb.disjuncts):
            return None
        m = mapping
        for da, db in zip(ca.disjuncts, cb.disjuncts):
            m = _match_box(da, db, m)
            if m is None:
                return None
        return m
    return None


def _match_arg(x, y, mapping):
    if type(x) is not type(y):
        return None
    if isinstance(x, RefArg):
        if x.id in mapping:
            return mapping if mapping[x.id] == y.id else None
        if y.id in mapping.values():
            return None
        mapping[x.id] = y.id
        return mapping
    return mapping if x == y else None
