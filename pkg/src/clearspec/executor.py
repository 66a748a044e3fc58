"""Simulated execution of an accepted specification.

Conditions are walked in sentence order. Before each event the participating
referents are instantiated, either from a definition file or by asking the
oracle; the event is then printed as a trace line. If-then conditions check
their ground antecedent against the knowledge base facts, then the truth
store, and finally ask the oracle; the consequent's events fire only when
the antecedent holds. Side effects are print-only.
"""

import re
from dataclasses import dataclass, field

from .drs import Atom, Group, Implies, NameArg, Not, NumArg, Or, RefArg
from .errors import InconsistentAssertion, MalformedAssertion, OracleExhausted


@dataclass
class InstantiationRequest:
    sort: str

    kind = "instantiation"

    @property
    def text(self):
        return self.sort.replace(" ", "_")


@dataclass
class TruthRequest:
    statement: str     # rendered ground property, e.g. "1234 is valid"
    instance: str
    adjective: str

    kind = "truth"

    @property
    def text(self):
        return self.statement


@dataclass
class EventTrace:
    line: str

    kind = "event"

    @property
    def text(self):
        return self.line


@dataclass
class Assertion:
    name: str
    sort: str = None        # "<name> is a <sort>"
    adjective: str = None   # "<name> is [not] <adjective>"
    truth: bool = True

    @property
    def is_instantiation(self):
        return self.sort is not None


_ASSERT_RE = re.compile(
    r"^\s*(?P<name>\S+)\s+is\s+(?:(?P<art>an?)\s+(?P<sort>\S+)"
    r"|(?P<not>not\s+)?(?P<adj>\S+))\s*\.?\s*$"
)


def parse_assertion(line, lineno=None):
    m = _ASSERT_RE.match(line)
    if not m:
        raise MalformedAssertion(
            f"expected '<name> is a <sort>' or '<name> is [not] <adjective>': "
            f"{line.strip()!r}",
            lineno,
        )
    if m.group("sort"):
        return Assertion(m.group("name"), sort=m.group("sort"))
    return Assertion(
        m.group("name"),
        adjective=m.group("adj"),
        truth=m.group("not") is None,
    )


def load_definitions(path):
    """Assertion list from a definition file, one per line, '#' comments."""
    out = []
    with open(path, encoding="utf-8") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            out.append(parse_assertion(line, lineno))
    return out


def _numeric(name):
    return re.fullmatch(r"\d+(\.\d+)?", name) is not None


class Execution:
    """One run over a session's discourse structure.

    `run()` is a generator yielding oracle messages. EventTrace messages
    need no reply (send None); requests expect an assertion line via
    send(). The trace of event lines accumulates in `self.trace`.
    """

    def __init__(self, drs, kb, definitions=None, lexicon=None):
        self.drs = drs
        self.kb = kb
        self.lexicon = lexicon
        self.defs = list(definitions or [])
        self.consumed = [False] * len(self.defs)
        self.instances = {}      # referent id -> instance name
        self.names = {}          # instance name -> referent id
        self.truth = {}          # (referent id, adjective) -> bool
        self.trace = []
        self.unused_definitions = []
        self._facts = {a.render() for a in kb.facts()} if kb else set()
        self._referents = {r.id: r for r in drs.all_referents()}
        self._groups = {}
        for cond in drs.conditions:
            if isinstance(cond, Group):
                self._groups[cond.group.id] = [m.id for m in cond.members]

    # -- assertion handling

    def _sort_of(self, ref_id):
        return self._referents[ref_id].sort.replace(" ", "_")

    def apply_assertion(self, assertion, for_ref=None):
        """Record one assertion; returns True if it changed state."""
        if assertion.is_instantiation:
            if assertion.name in self.names:
                raise InconsistentAssertion(
                    f"name {assertion.name!r} is already in use"
                )
            target = None
            if for_ref is not None and self._sort_of(for_ref) == assertion.sort:
                target = for_ref
            else:
                for rid, ref in sorted(self._referents.items()):
                    if rid in self.instances:
                        continue
                    if self._sort_of(rid) == assertion.sort:
                        target = rid
                        break
            if target is None:
                raise MalformedAssertion(
                    f"nothing of sort {assertion.sort!r} awaits a name"
                )
            self.instances[target] = assertion.name
            self.names[assertion.name] = target
            return True
        rid = self.names.get(assertion.name)
        if rid is None:
            raise MalformedAssertion(
                f"{assertion.name!r} has not been introduced with "
                f"'{assertion.name} is a <sort>'"
            )
        key = (rid, assertion.adjective)
        if key in self.truth and self.truth[key] != assertion.truth:
            raise InconsistentAssertion(
                f"{assertion.name} is already known to be "
                f"{'' if self.truth[key] else 'not '}{assertion.adjective}"
            )
        self.truth[key] = assertion.truth
        return True

    def _from_definitions(self, want):
        """Consume the first unconsumed definition satisfying `want`."""
        for i, a in enumerate(self.defs):
            if self.consumed[i]:
                continue
            if want(a):
                self.consumed[i] = True
                return a
        return None

    # -- the walk

    def run(self):
        for cond in self.drs.conditions:
            if isinstance(cond, Atom):
                if cond.kind == "verb":
                    yield from self._event(cond)
                elif cond.kind == "adj":
                    self._seed_truth(cond)
            elif isinstance(cond, Implies):
                yield from self._implication(cond)
            # top-level Not / Or conditions state constraints, not events
        self.unused_definitions = [
            a for i, a in enumerate(self.defs) if not self.consumed[i]
        ]

    def _seed_truth(self, atom):
        if len(atom.args) == 1 and isinstance(atom.args[0], RefArg):
            self.truth[(atom.args[0].id, atom.pred)] = True

    def _participants(self, atom):
        out = []
        for a in atom.args:
            if isinstance(a, RefArg):
                if a.id in self._groups:
                    out.extend(self._groups[a.id])
                else:
                    out.append(a.id)
        return out

    def _instantiate(self, rid):
        if rid in self.instances:
            return
        sort = self._sort_of(rid)
        fromdef = self._from_definitions(
            lambda a: a.is_instantiation and a.sort == sort
        )
        if fromdef is not None:
            self.apply_assertion(fromdef, for_ref=rid)
            return
        while rid not in self.instances:
            reply = yield InstantiationRequest(sort)
            if reply is None:
                raise OracleExhausted(f"no name supplied for a {sort}")
            self.apply_assertion(parse_assertion(reply), for_ref=rid)

    def _event(self, atom):
        for rid in self._participants(atom):
            yield from self._instantiate(rid)
        self.emit(self._render_event(atom))
        self._facts.add(atom.render())
        yield EventTrace(self.trace[-1])

    def emit(self, line):
        self.trace.append(f"event: {line}")

    def _render_arg(self, arg, as_subject=False):
        if isinstance(arg, RefArg):
            if arg.id in self._groups:
                names = [self.instances[m] for m in self._groups[arg.id]]
                return " and ".join(names)
            name = self.instances[arg.id]
            if as_subject or _numeric(name):
                return name
            return f"the {name}"
        if isinstance(arg, NumArg):
            return arg.text
        if isinstance(arg, NameArg):
            return arg.name
        raise TypeError(arg)

    def _verb_form(self, lemma, plural):
        slot = "third-pl" if plural else "third-sg"
        if self.lexicon is not None:
            entry = self.lexicon.find(lemma, cls="verb")
            if entry is not None:
                return entry.forms[slot]
        if plural:
            return lemma
        from .lexicon import third_singular

        return third_singular(lemma)

    def _render_event(self, atom):
        subject = atom.args[0]
        plural = isinstance(subject, RefArg) and subject.id in self._groups
        preps = list(atom.preps)
        lemma = atom.pred
        for p in reversed(preps):
            suffix = "_" + p.replace(" ", "_")
            if lemma.endswith(suffix):
                lemma = lemma[: -len(suffix)]
        lemma = lemma.replace("_", " ")
        verb = self._verb_form(lemma, plural)
        words = [self._render_arg(subject, as_subject=True), verb]
        rest = list(atom.args[1:])
        n_pp = len(preps)
        objs = rest[: len(rest) - n_pp]
        if objs:
            words.append(self._render_arg(objs[0]))
        for prep, arg in zip(preps, rest[len(rest) - n_pp :]):
            words.append(prep)
            words.append(self._render_arg(arg))
        return " ".join(words)

    # -- implications

    def _implication(self, imp):
        if imp.antecedent.referents or imp.consequent.referents:
            return  # only ground rules run in v1
        holds = yield from self._antecedent_holds(imp.antecedent)
        if not holds:
            return
        for cond in imp.consequent.conditions:
            if isinstance(cond, Atom):
                if cond.kind == "verb":
                    yield from self._event(cond)
                elif cond.kind == "adj":
                    self._seed_truth(cond)

    def _antecedent_holds(self, box):
        for cond in box.conditions:
            if isinstance(cond, Atom):
                value = yield from self._atom_truth(cond)
                if not value:
                    return False
            elif isinstance(cond, Not):
                for sub in cond.drs.conditions:
                    if isinstance(sub, Atom):
                        value = yield from self._atom_truth(sub)
                        if value:
                            return False
            else:
                return False
        return True

    def _atom_truth(self, atom):
        if atom.render() in self._facts:
            return True
        if atom.kind == "noun":
            rid = atom.args[0].id if isinstance(atom.args[0], RefArg) else None
            return rid is not None and self._sort_of(rid) == atom.pred
        if atom.kind == "adj" and len(atom.args) == 1 and isinstance(atom.args[0], RefArg):
            rid = atom.args[0].id
            key = (rid, atom.pred)
            if key in self.truth:
                return self.truth[key]
            yield from self._instantiate(rid)
            if key in self.truth:
                return self.truth[key]
            name = self.instances[rid]
            fromdef = self._from_definitions(
                lambda a: not a.is_instantiation
                and a.name == name
                and a.adjective == atom.pred
            )
            if fromdef is not None:
                self.apply_assertion(fromdef)
                return self.truth[key]
            while key not in self.truth:
                reply = yield TruthRequest(f"{name} is {atom.pred}", name, atom.pred)
                if reply is None:
                    raise OracleExhausted(f"no answer about {name} {atom.pred}")
                self.apply_assertion(parse_assertion(reply))
            return self.truth[key]
        # verb atoms only hold when already known as facts or fired events
        return False


def run_scripted(execution, lines):
    """Drive an execution from a fixed list of reply lines, strictly in order.

    Returns the transcript: ('user'|'event', text) pairs in dialog order.
    """
    pending = list(lines)
    transcript = []
    gen = execution.run()
    try:
        msg = next(gen)
        while True:
            if isinstance(msg, EventTrace):
                transcript.append(("event", msg.line))
                msg = gen.send(None)
            else:
                if not pending:
                    raise OracleExhausted(
                        f"script ran out at request: {msg.text}"
                    )
                reply = pending.pop(0)
                transcript.append(("user", reply))
                msg = gen.send(reply)
    except StopIteration:
        pass
    return transcript
