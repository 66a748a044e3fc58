"""Deterministic recursive-descent parser for the controlled English subset.

The grammar commits at every choice point; the only lookahead is over
lexical categories (one noun phrase plus one token) when deciding whether a
conjunction continues an object list, a verb phrase list, or a new sentence.
Prepositional phrases always attach to the verb phrase and relative clauses
always attach to the noun phrase just parsed (the rightmost one); both
decisions are recorded in the attachment log so the paraphrase can display
them.
"""

from dataclasses import dataclass, field

from . import lexicon as lx
from .errors import (
    ModalVerbRejected,
    NonPresentTenseRejected,
    ParticipleRejected,
    PassiveRejected,
    SentenceSyntaxError,
    UnknownWords,
)
from .tokens import NUMERAL, PUNCT, WORD

DECLARATIVE = "declarative"
YES_NO_QUESTION = "yes-no-question"
WH_QUESTION = "wh-question"


# --- syntax tree ------------------------------------------------------------

@dataclass
class Leaf:
    token: object
    entry: object = None
    slot: str = None

    category = "Leaf"

    @property
    def lemma(self):
        return self.entry.lemma if self.entry else self.token.lower


@dataclass
class IndefNP:
    det: Leaf
    adjs: list
    noun: Leaf
    relcl: object = None
    category = "NP"

    number = "sg"


@dataclass
class DefNP:
    det: Leaf
    adjs: list
    noun: Leaf
    relcl: object = None
    category = "NP"

    number = "sg"


@dataclass
class NoNP:
    det: Leaf
    adjs: list
    noun: Leaf
    relcl: object = None
    category = "NP"

    number = "sg"


@dataclass
class ProperNP:
    leaf: Leaf
    via: str = "lemma"  # lemma | abbreviation | synonym
    category = "NP"

    number = "sg"


@dataclass
class PronounNP:
    leaf: Leaf
    category = "NP"

    @property
    def number(self):
        return self.leaf.entry.number


@dataclass
class NumberNP:
    leaf: Leaf
    category = "NP"

    number = "sg"

    @property
    def value(self):
        if self.leaf.entry is not None and self.leaf.entry.value is not None:
            return str(self.leaf.entry.value)
        return self.leaf.token.surface


@dataclass
class CoordNP:
    parts: list
    op: str              # and | or
    exclusive: bool = False
    category = "NP"

    @property
    def number(self):
        return "pl" if self.op == "and" else "sg"


@dataclass
class NeitherNP:
    parts: list
    category = "NP"

    number = "sg"


@dataclass
class PP:
    prep: Leaf
    np: object
    category = "PP"


@dataclass
class RelCl:
    pron: Leaf
    vp: object
    category = "RelCl"


@dataclass
class AdjLeaf:
    leaf: Leaf
    degree_adv: Leaf = None  # 'more'/'most' for analytic degree
    category = "AdjP"

    @property
    def predicate(self):
        base = self.leaf.entry.lemma
        slot = self.leaf.slot
        if self.degree_adv is not None:
            return f"{self.degree_adv.lemma}_{base}".replace(" ", "_")
        if slot in ("comparative", "superlative"):
            form = self.leaf.entry.forms[slot]
            return form.replace(" ", "_")
        return base.replace(" ", "_")


@dataclass
class VerbVP:
    verb: Leaf
    negated: bool = False
    obj: object = None
    pps: list = field(default_factory=list)
    together: bool = False
    aux: Leaf = None
    category = "VP"


@dataclass
class CopulaVP:
    cop: Leaf
    negated: bool = False
    adj: AdjLeaf = None
    prednom: object = None   # indefinite NP used as predicate nominal
    category = "VP"


@dataclass
class Clause:
    subject: object
    vps: list
    vp_op: str = None        # conjunction between coordinated VPs
    each: bool = False
    category = "S"


@dataclass
class IfThen:
    ante: object
    cons: object
    category = "S"


@dataclass
class SentCoord:
    parts: list
    op: str
    category = "S"


@dataclass
class YesNoQ:
    clause: Clause
    category = "S"


@dataclass
class WhQ:
    wh: Leaf
    vp: object
    category = "S"


@dataclass
class Attachment:
    kind: str      # pp-minimal-attachment | relcl-right-association
    text: str      # the grouped words, for reporting


@dataclass
class ParseResult:
    tree: object
    kind: str
    attachments: list
    tokens: list


# --- token-level preflight ----------------------------------------------------

def _preflight(tokens, lexicon):
    unknown = []
    for i, t in enumerate(tokens):
        if t.kind != WORD:
            continue
        low = t.lower
        if low in lx.MODAL_VERBS:
            raise ModalVerbRejected(
                f"modal verb {t.surface!r} is not allowed; state the fact directly",
                t.span,
            )
        if low == "else":
            raise SentenceSyntaxError(
                "there is no 'else'; write each condition as its own "
                "if-then sentence",
                t.span,
            )
        if lexicon.lookup(low):
            continue
        stem = None
        if low.endswith("ing"):
            stem = low[:-3]
            for cand in (stem, stem + "e", stem[:-1] if stem and stem[-1:].isalpha() else stem):
                if cand and any(e.cls == lx.VERB for e, _ in lexicon.lookup(cand)):
                    raise ParticipleRejected(
                        f"participle {t.surface!r} is not allowed", t.span
                    )
        if low.endswith("ed"):
            stem = low[:-2]
            for cand in (stem, stem + "e" if not stem.endswith("e") else stem, low[:-1]):
                if cand and any(e.cls == lx.VERB for e, _ in lexicon.lookup(cand)):
                    prev = tokens[i - 1].lower if i > 0 else ""
                    if prev in ("is", "are"):
                        raise PassiveRejected(
                            f"passive {prev} {t.surface!r} is not allowed; "
                            "use the active form",
                            t.span,
                        )
                    raise NonPresentTenseRejected(
                        f"past form {t.surface!r} is not allowed; "
                        "use the simple present",
                        t.span,
                    )
        unknown.append(t.surface)
    if unknown:
        raise UnknownWords(unknown)


# --- the parser ---------------------------------------------------------------

_VERB_STARTERS = {"does", "do", "is", "are"}


class _Parser:
    def __init__(self, tokens, lexicon):
        self.tokens = tokens
        self.lexicon = lexicon
        self.pos = 0
        self.attachments = []
        self.in_question = False

    # -- cursor helpers

    def peek(self, ahead=0):
        i = self.pos + ahead
        return self.tokens[i] if i < len(self.tokens) else None

    def next(self):
        t = self.peek()
        self.pos += 1
        return t

    def at_word(self, *surfaces):
        t = self.peek()
        return t is not None and t.kind == WORD and t.lower in surfaces

    def expect_word(self, *surfaces):
        t = self.peek()
        if t is None or t.kind != WORD or t.lower not in surfaces:
            self.fail(f"expected {' or '.join(repr(s) for s in surfaces)}", t)
        return self.next()

    def fail(self, message, token=None):
        token = token or self.peek()
        span = token.span if token else None
        at = f" at {token.surface!r}" if token else " at end of sentence"
        raise SentenceSyntaxError(message + at, span)

    def entry_for(self, token, cls, slots=None):
        for e, s in self.lexicon.lookup(token.lower):
            if e.cls == cls and (slots is None or s in slots):
                return e, s
        return None

    # -- categories of the next token

    def starts_vp(self, ahead=0):
        t = self.peek(ahead)
        if t is None or t.kind != WORD:
            return False
        if t.lower in _VERB_STARTERS:
            return True
        return bool(self.entry_for(t, lx.VERB))

    def starts_np(self, ahead=0):
        t = self.peek(ahead)
        if t is None:
            return False
        if t.kind == NUMERAL:
            return True
        if t.kind != WORD:
            return False
        if t.lower in ("a", "an", "the", "no", "either", "neither"):
            return True
        for e, s in self.lexicon.lookup(t.lower):
            if e.cls in (lx.PROPER_NOUN, lx.NUMBER_WORD):
                return True
            if e.cls == lx.PRONOUN and "personal" in e.roles:
                return True
        return False

    # -- entry point

    def parse(self):
        t = self.peek()
        if t is None:
            self.fail("empty sentence")
        if t.kind == WORD and t.lower == "if":
            tree = self.parse_if_then()
            kind = DECLARATIVE
        elif t.kind == WORD and t.lower in ("does", "do", "is", "are"):
            tree, kind = self.parse_yes_no(), YES_NO_QUESTION
        elif t.kind == WORD and self._is_wh(t):
            tree, kind = self.parse_wh(), WH_QUESTION
        else:
            tree = self.parse_coordinated_sentence()
            kind = DECLARATIVE
        self.expect_terminator(kind)
        return tree, kind

    def _is_wh(self, t):
        for e, s in self.lexicon.lookup(t.lower):
            if e.cls == lx.PRONOUN and "wh" in e.roles:
                return True
        return False

    def expect_terminator(self, kind):
        t = self.peek()
        if t is None or t.kind != PUNCT:
            self.fail("expected end of sentence")
        want = "?" if kind != DECLARATIVE else "."
        if t.surface != want:
            self.fail(f"expected {want!r}", t)
        self.next()
        if self.peek() is not None:
            self.fail("unexpected material after sentence end")

    # -- sentences

    def parse_if_then(self):
        self.expect_word("if")
        ante = self.parse_coordinated_sentence(stop_words=("then",))
        self.expect_word("then")
        cons = self.parse_coordinated_sentence()
        return IfThen(ante, cons)

    def parse_coordinated_sentence(self, stop_words=()):
        parts = [self.parse_clause(stop_words)]
        op = None
        while self.at_word("and", "or"):
            conj = self.peek()
            # a conjunction continues the sentence only if a full clause
            # follows: an NP immediately followed by a VP
            save = self.pos
            self.next()
            if not (self.starts_np() and self._np_then_vp()):
                self.pos = save
                break
            if op is None:
                op = conj.lower
            elif op != conj.lower:
                self.fail("mixing 'and' and 'or' without grouping is ambiguous", conj)
            parts.append(self.parse_clause(stop_words))
        if len(parts) == 1:
            return parts[0]
        return SentCoord(parts, op)

    def _np_then_vp(self):
        """Lexical lookahead: try an NP here and check a VP starts after it."""
        save = self.pos
        save_att = len(self.attachments)
        try:
            self.parse_np(allow_coord=False)
            ok = self.starts_vp() or self.at_word("each")
        except SentenceSyntaxError:
            ok = False
        self.pos = save
        del self.attachments[save_att:]
        return ok

    def parse_clause(self, stop_words=()):
        subject = self.parse_np(allow_coord=True, stop_words=stop_words, subject=True)
        each = False
        if self.at_word("each"):
            if not isinstance(subject, CoordNP) or subject.op != "and":
                self.fail("'each' needs a coordinated subject")
            each = True
            self.next()
        number = subject.number
        if isinstance(subject, CoordNP) and each:
            number = "pl"
        vps = [self.parse_vp(number)]
        vp_op = None
        while self.at_word("and", "or") and self.starts_vp(1):
            conj = self.next()
            if vp_op is None:
                vp_op = conj.lower
            elif vp_op != conj.lower:
                self.fail("mixing 'and' and 'or' without grouping is ambiguous", conj)
            vps.append(self.parse_vp(number))
        return Clause(subject, vps, vp_op, each)

    # -- questions

    def parse_yes_no(self):
        aux = self.next()
        if aux.lower in ("does", "do"):
            subject = self.parse_np(allow_coord=False)
            self._check_q_agreement(aux, subject)
            self._reject_question_negation()
            verb = self.parse_verb_leaf("third-pl")
            vp = self.finish_verb_vp(verb, negated=False, aux=aux)
            return YesNoQ(Clause(subject, [vp]))
        # copula question: Is the card valid?
        subject = self.parse_np(allow_coord=False)
        self._check_q_agreement(aux, subject)
        self._reject_question_negation()
        vp = self.parse_copula_complement(Leaf(aux), negated=False)
        return YesNoQ(Clause(subject, [vp]))

    def _check_q_agreement(self, aux, subject):
        want = {"does": "sg", "do": "pl", "is": "sg", "are": "pl"}[aux.lower]
        if subject.number != want:
            self.fail(
                f"{aux.surface!r} does not agree with a {subject.number} subject",
                aux,
            )

    def _reject_question_negation(self):
        for i in range(self.pos, len(self.tokens)):
            t = self.tokens[i]
            if t.kind == WORD and t.lower in ("not", "no", "neither"):
                self.fail("negation inside a question is not supported", t)
            if t.kind == WORD and t.lower in ("and", "or", "if"):
                self.fail("coordination inside a question is not supported", t)

    def parse_wh(self):
        wh = self.next()
        entry, slot = self.entry_for(wh, lx.PRONOUN, slots=None)
        self._reject_question_negation()
        vp = self.parse_vp("sg")
        return WhQ(Leaf(wh, entry, "base"), vp)

    # -- verb phrases

    def parse_vp(self, number):
        t = self.peek()
        if t is None:
            self.fail("expected a verb phrase")
        if t.kind == WORD and t.lower in ("does", "do"):
            aux = self.next()
            if (aux.lower == "does") != (number == "sg"):
                self.fail(f"{aux.surface!r} does not agree with the subject", aux)
            self.expect_word("not")
            verb = self.parse_verb_leaf("third-pl")
            return self.finish_verb_vp(verb, negated=True, aux=aux)
        if t.kind == WORD and t.lower in ("is", "are"):
            cop = self.next()
            if (cop.lower == "is") != (number == "sg"):
                self.fail(f"{cop.surface!r} does not agree with the subject", cop)
            negated = False
            if self.at_word("not"):
                self.next()
                negated = True
            return self.parse_copula_complement(Leaf(cop), negated)
        slot = "third-sg" if number == "sg" else "third-pl"
        verb = self.parse_verb_leaf(slot)
        return self.finish_verb_vp(verb, negated=False)

    def parse_verb_leaf(self, slot):
        t = self.peek()
        if t is None or t.kind != WORD:
            self.fail("expected a verb")
        hit = self.entry_for(t, lx.VERB, slots=(slot,))
        if hit is None:
            other = self.entry_for(t, lx.VERB)
            if other is not None:
                self.fail(
                    f"verb {t.surface!r} does not agree with the subject", t
                )
            self.fail(f"expected a verb, found {t.surface!r}", t)
        self.next()
        return Leaf(t, hit[0], hit[1])

    def finish_verb_vp(self, verb, negated, aux=None):
        obj = None
        if self.starts_np() or self.at_word("either", "neither"):
            if self.at_word("neither") and negated:
                self.fail("'not ... neither' doubles the negation")
            obj = self.parse_object()
        pps = []
        while True:
            t = self.peek()
            if t is None or t.kind != WORD:
                break
            hit = self.entry_for(t, lx.PREPOSITION)
            if hit is None:
                break
            prep = Leaf(self.next(), hit[0], "base")
            pnp = self.parse_np(allow_coord=False)
            pps.append(PP(prep, pnp))
            self.attachments.append(
                Attachment("pp-minimal-attachment", f"{prep.token.lower} ...")
            )
        together = False
        if self.at_word("together"):
            self.next()
            together = True
        return VerbVP(verb, negated, obj, pps, together, aux)

    def parse_copula_complement(self, cop, negated):
        t = self.peek()
        if t is None:
            self.fail("expected an adjective or 'a <noun>' after the copula")
        if t.kind == WORD and t.lower in ("a", "an"):
            prednom = self.parse_np(allow_coord=False)
            return CopulaVP(cop, negated, prednom=prednom)
        adj = self.parse_adjective(predicative=True)
        return CopulaVP(cop, negated, adj=adj)

    def parse_adjective(self, predicative=False):
        t = self.peek()
        degree = None
        if predicative and t is not None and t.kind == WORD and t.lower in ("more", "most"):
            nxt = self.peek(1)
            if nxt is not None and nxt.kind == WORD and self.entry_for(nxt, lx.ADJECTIVE):
                degree = Leaf(self.next())
                t = self.peek()
        if t is None or t.kind != WORD:
            self.fail("expected an adjective")
        hit = self.entry_for(t, lx.ADJECTIVE)
        if hit is None:
            self.fail(f"expected an adjective, found {t.surface!r}", t)
        self.next()
        return AdjLeaf(Leaf(t, hit[0], hit[1]), degree)

    # -- noun phrases

    def parse_object(self):
        if self.at_word("neither"):
            self.next()
            parts = [self.parse_np(allow_coord=False)]
            self.expect_word("nor")
            parts.append(self.parse_np(allow_coord=False))
            while self.at_word("nor"):
                self.next()
                parts.append(self.parse_np(allow_coord=False))
            return NeitherNP(parts)
        if self.at_word("either"):
            self.next()
            parts = [self.parse_np(allow_coord=False)]
            self.expect_word("or")
            parts.append(self.parse_np(allow_coord=False))
            while self.at_word("or") and self._conj_continues_np():
                self.next()
                parts.append(self.parse_np(allow_coord=False))
            return CoordNP(parts, "or", exclusive=True)
        return self.parse_np(allow_coord=True)

    def parse_np(self, allow_coord, stop_words=(), no_relcl=False, subject=False):
        np = self.parse_simple_np(no_relcl=no_relcl)
        if not allow_coord:
            return np
        parts = [np]
        op = None
        while self.at_word("and", "or"):
            conj = self.peek()
            if conj.lower in stop_words:
                break
            # before the first verb phrase a conjunction can only continue
            # the subject; in object position a following verb phrase means
            # the conjunction starts a new sentence instead
            if subject:
                save = self.pos
                self.next()
                more = self.starts_np()
                self.pos = save
                if not more:
                    break
            elif not self._conj_continues_np():
                break
            self.next()
            if op is None:
                op = conj.lower
            elif op != conj.lower:
                self.fail("mixing 'and' and 'or' without grouping is ambiguous", conj)
            parts.append(self.parse_simple_np(no_relcl=no_relcl))
        if len(parts) == 1:
            return np
        return CoordNP(parts, op)

    def _conj_continues_np(self):
        """True when the token after the conjunction starts an NP that is
        not itself the subject of a following verb phrase."""
        save = self.pos
        save_att = len(self.attachments)
        self.next()  # conjunction
        if not self.starts_np():
            self.pos = save
            return False
        try:
            self.parse_np(allow_coord=False)
            cont = not (self.starts_vp() or self.at_word("each"))
        except SentenceSyntaxError:
            cont = False
        self.pos = save
        del self.attachments[save_att:]
        return cont

    def parse_simple_np(self, no_relcl=False):
        t = self.peek()
        if t is None:
            self.fail("expected a noun phrase")
        if t.kind == NUMERAL:
            return NumberNP(Leaf(self.next()))
        if t.kind != WORD:
            self.fail(f"expected a noun phrase, found {t.surface!r}", t)
        low = t.lower
        if low in ("a", "an", "the", "no"):
            det = Leaf(self.next())
            adjs = []
            while True:
                nt = self.peek()
                if nt is None or nt.kind != WORD:
                    break
                if self.entry_for(nt, lx.ADJECTIVE) and not self._noun_here(nt):
                    adjs.append(self.parse_adjective())
                else:
                    break
            noun = self.parse_noun_leaf(det)
            cls = {"a": IndefNP, "an": IndefNP, "the": DefNP, "no": NoNP}[low]
            np = cls(det, adjs, noun)
            np.relcl = None if no_relcl else self.maybe_relcl(np)
            return np
        hit = self.entry_for(t, lx.PROPER_NOUN)
        if hit is not None:
            entry, slot = hit
            via = {"abbreviation": "abbreviation", "synonym": "synonym"}.get(slot, "lemma")
            self.next()
            return ProperNP(Leaf(t, entry, slot), via)
        for e, s in self.lexicon.lookup(low):
            if e.cls == lx.PRONOUN and "personal" in e.roles:
                self.next()
                return PronounNP(Leaf(t, e, "base"))
            if e.cls == lx.NUMBER_WORD:
                self.next()
                return NumberNP(Leaf(t, e, "base"))
        if self.entry_for(t, lx.COMMON_NOUN):
            self.fail(
                f"common noun {t.surface!r} needs a determiner "
                "(a/an/the/no)",
                t,
            )
        self.fail(f"expected a noun phrase, found {t.surface!r}", t)

    def _noun_here(self, token):
        """Disambiguate adjective/noun homographs: prefer the noun reading
        when the word can head this NP (next token is not a noun)."""
        if not self.entry_for(token, lx.COMMON_NOUN):
            return False
        after = self.peek(1)
        if after is None or after.kind != WORD:
            return True
        return not self.entry_for(after, lx.COMMON_NOUN)

    def parse_noun_leaf(self, det):
        t = self.peek()
        if t is None or t.kind != WORD:
            self.fail("expected a noun")
        hit = self.entry_for(t, lx.COMMON_NOUN, slots=("sg", "pl"))
        if hit is None:
            self.fail(f"expected a noun, found {t.surface!r}", t)
        entry, slot = hit
        if slot == "pl":
            self.fail(
                f"plural noun phrases are not supported; found {t.surface!r}", t
            )
        if det.token.lower in ("a", "an") and entry.noun_kind == "mass":
            self.fail(
                f"mass noun {t.surface!r} cannot take an indefinite article", t
            )
        if det.token.lower == "a" and t.lower[0] in "aeiou":
            self.fail(f"use 'an' before {t.surface!r}", t)
        if det.token.lower == "an" and t.lower[0] not in "aeiou":
            self.fail(f"use 'a' before {t.surface!r}", t)
        self.next()
        return Leaf(t, entry, slot)

    def maybe_relcl(self, np):
        t = self.peek()
        if t is None or t.kind != WORD:
            return None
        hit = None
        for e, s in self.lexicon.lookup(t.lower):
            if e.cls == lx.PRONOUN and "relative" in e.roles:
                hit = e
                break
        if hit is None:
            return None
        pron = Leaf(self.next(), hit, "base")
        vp = self.parse_relcl_vp(np)
        self.attachments.append(
            Attachment("relcl-right-association", f"{pron.token.lower} ...")
        )
        return RelCl(pron, vp)

    def parse_relcl_vp(self, np):
        # relative clauses are subject-gap, single level, singular heads
        t = self.peek()
        if t is not None and t.kind == WORD and t.lower in ("is", "are"):
            cop = self.next()
            if cop.lower != "is":
                self.fail("relative clause head is singular", cop)
            negated = False
            if self.at_word("not"):
                self.next()
                negated = True
            return self.parse_copula_complement(Leaf(cop), negated)
        if t is not None and t.kind == WORD and t.lower in ("does", "do"):
            aux = self.next()
            if aux.lower != "does":
                self.fail("relative clause head is singular", aux)
            self.expect_word("not")
            verb = self.parse_verb_leaf("third-pl")
        else:
            verb = self.parse_verb_leaf("third-sg")
            aux = None
        obj = None
        if self.starts_np():
            obj = self.parse_np(allow_coord=False, no_relcl=True)
        pps = []
        while True:
            nt = self.peek()
            if nt is None or nt.kind != WORD:
                break
            hit = self.entry_for(nt, lx.PREPOSITION)
            if hit is None:
                break
            prep = Leaf(self.next(), hit[0], "base")
            pnp = self.parse_np(allow_coord=False, no_relcl=True)
            pps.append(PP(prep, pnp))
        return VerbVP(verb, aux is not None, obj, pps, False, aux)


def parse_sentence(tokens, lexicon):
    """Parse one tokenized sentence into (ParseResult) deterministically."""
    _preflight(tokens, lexicon)
    p = _Parser(tokens, lexicon)
    tree, kind = p.parse()
    return ParseResult(tree, kind, p.attachments, tokens)
