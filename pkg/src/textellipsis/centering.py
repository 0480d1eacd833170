"""Discourse units and the functional (topic/comment) ranking of forward-looking
centers.

Functional categories come from the annotation; they are never computed
from word order here.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from functools import cmp_to_key
from graphlib import CycleError, TopologicalSorter
from typing import Optional

from .errors import DiscourseError

# word class -> parent word class
WORD_CLASSES: dict[str, Optional[str]] = {
    "Word": None,
    "Nominal": "Word",
    "Noun": "Nominal",
    "ProperName": "Noun",
    "Pronoun": "Nominal",
    "PossessivePronoun": "Pronoun",
    "DetDefinite": "Nominal",
    "DetIndefinite": "Nominal",
    "Verb": "Word",
    "Preposition": "Word",
    "Adjective": "Word",
    "Adverb": "Word",
    "Numeral": "Word",
}


def word_class_isa(word_class: str, ancestor: str) -> bool:
    cur: Optional[str] = word_class
    while cur is not None:
        if cur == ancestor:
            return True
        cur = WORD_CLASSES.get(cur)
    return False


class Kind(enum.IntEnum):
    # value = rank, lower is preferred
    ANAPHOR = 0
    HEAD_RHEME = 1
    RIGHT_EDGE_RHEME = 2
    HEAD_THEME = 3
    UNMARKED_HEAD = 4


class AnaphorKind(enum.IntEnum):
    PRONOMINAL = 0
    POSSESSIVE_PRONOUN = 1
    NOMINAL_ANAPHOR = 2
    TEXTUAL_ELLIPSIS = 3


class GrammFunction(enum.IntEnum):
    SUBJECT = 0
    DIRECT_OBJECT = 1
    INDIRECT_OBJECT = 2
    ADJUNCT = 3


class Order(enum.Enum):
    A_FIRST = "AFirst"
    B_FIRST = "BFirst"
    EQUAL = "Equal"


_KIND_TOKENS = {
    "head-rheme": Kind.HEAD_RHEME,
    "right-edge-rheme": Kind.RIGHT_EDGE_RHEME,
    "head-theme": Kind.HEAD_THEME,
    "unmarked": Kind.UNMARKED_HEAD,
}
_ANAPHOR_TOKENS = {
    "pronominal": AnaphorKind.PRONOMINAL,
    "possessive": AnaphorKind.POSSESSIVE_PRONOUN,
    "nominal": AnaphorKind.NOMINAL_ANAPHOR,
    "ellipsis": AnaphorKind.TEXTUAL_ELLIPSIS,
}
_GFUNC_TOKENS = {
    "subject": GrammFunction.SUBJECT,
    "direct-object": GrammFunction.DIRECT_OBJECT,
    "indirect-object": GrammFunction.INDIRECT_OBJECT,
    "adjunct": GrammFunction.ADJUNCT,
}


@dataclass(frozen=True)
class FunctionalCategory:
    kind: Kind
    anaphor_kind: Optional[AnaphorKind] = None
    gramm_function: Optional[GrammFunction] = None

    def __post_init__(self):
        is_anaphor = self.kind is Kind.ANAPHOR
        if is_anaphor != (self.anaphor_kind is not None) or is_anaphor != (self.gramm_function is not None):
            raise ValueError("anaphor_kind and gramm_function are required for, and only for, anaphors")

    @classmethod
    def anaphor(cls, anaphor_kind: AnaphorKind, gramm_function: GrammFunction) -> "FunctionalCategory":
        return cls(Kind.ANAPHOR, anaphor_kind, gramm_function)

    @classmethod
    def parse(cls, token: str) -> "FunctionalCategory":
        if token in _KIND_TOKENS:
            return cls(_KIND_TOKENS[token])
        parts = token.split(":")
        if len(parts) == 3 and parts[0] == "anaphor" and parts[1] in _ANAPHOR_TOKENS and parts[2] in _GFUNC_TOKENS:
            return cls.anaphor(_ANAPHOR_TOKENS[parts[1]], _GFUNC_TOKENS[parts[2]])
        raise ValueError(f"bad functional category {token!r}")

    @property
    def token(self) -> str:
        if self.kind is Kind.ANAPHOR:
            ak = next(k for k, v in _ANAPHOR_TOKENS.items() if v is self.anaphor_kind)
            gf = next(k for k, v in _GFUNC_TOKENS.items() if v is self.gramm_function)
            return f"anaphor:{ak}:{gf}"
        return next(k for k, v in _KIND_TOKENS.items() if v is self.kind)

    @property
    def is_anaphor(self) -> bool:
        return self.kind is Kind.ANAPHOR


def _by_rank(a: int, b: int) -> Order:
    if a < b:
        return Order.A_FIRST
    if a > b:
        return Order.B_FIRST
    return Order.EQUAL


def compare_tc(a: FunctionalCategory, b: FunctionalCategory) -> Order:
    """Composite topic/comment preference between two categories.

    Two anaphors of the same type are ordered by grammatical function, two
    anaphors of different types by anaphor type, anything else by the base
    topic/comment rank.
    """
    if a.is_anaphor and b.is_anaphor:
        if a.anaphor_kind is b.anaphor_kind:
            return _by_rank(a.gramm_function, b.gramm_function)
        return _by_rank(a.anaphor_kind, b.anaphor_kind)
    return _by_rank(a.kind, b.kind)


@dataclass(frozen=True)
class Phrase:
    id: str
    surface: str
    word_class: str
    func: FunctionalCategory
    head: Optional[str] = None  # id of the governing phrase
    definite: bool = False
    binding: Optional[str] = None
    position: int = 0
    utterance: int = 0


@dataclass(frozen=True)
class Link:
    """Instance-level relation ``source --roles--> target`` in the text model."""

    source: str
    roles: tuple[str, ...]
    target: str


@dataclass(frozen=True)
class Utterance:
    """One sentence. Construction stamps each phrase with its utterance index
    and surface position and marks phrases governing a definite determiner."""

    index: int
    phrases: tuple[Phrase, ...] = ()
    links: tuple[Link, ...] = ()

    def __post_init__(self):
        phrases = tuple(self.phrases)
        ids = {}
        for p in phrases:
            if p.id in ids:
                raise DiscourseError("duplicate phrase id", utterance=self.index, phrase=p.id)
            if p.word_class not in WORD_CLASSES:
                raise DiscourseError(f"unknown word class {p.word_class!r}", utterance=self.index, phrase=p.id)
            ids[p.id] = p
        for p in phrases:
            if p.head is not None and p.head not in ids:
                raise DiscourseError(f"head {p.head!r} is not in this utterance", utterance=self.index, phrase=p.id)
        try:
            TopologicalSorter({p.id: (p.head,) if p.head else () for p in phrases}).prepare()
        except CycleError as exc:
            raise DiscourseError(f"head links form a cycle: {' -> '.join(exc.args[1])}", utterance=self.index) from None
        det_heads = {p.head for p in phrases if p.head is not None and word_class_isa(p.word_class, "DetDefinite")}
        stamped = tuple(
            replace(p, position=i, utterance=self.index, definite=p.definite or p.id in det_heads)
            for i, p in enumerate(phrases, 1)
        )
        object.__setattr__(self, "phrases", stamped)
        object.__setattr__(self, "links", tuple(self.links))

    def phrase(self, phrase_id: str) -> Phrase:
        for p in self.phrases:
            if p.id == phrase_id:
                return p
        raise KeyError(phrase_id)

    def is_head(self, phrase: Phrase) -> bool:
        """True unless the phrase modifies a nominal (directly or via function
        words such as prepositions)."""
        cur = phrase.head
        while cur is not None:
            gov = self.phrase(cur)
            if word_class_isa(gov.word_class, "Noun") or word_class_isa(gov.word_class, "Pronoun"):
                return False
            if word_class_isa(gov.word_class, "Verb"):
                return True
            cur = gov.head
        return True


@dataclass(frozen=True)
class CenterState:
    utterance: int
    cf: tuple[Phrase, ...] = ()
    cb: Optional[Phrase] = None


def cf_eligible(utterance: Utterance, phrase: Phrase) -> bool:
    if not (word_class_isa(phrase.word_class, "Noun") or word_class_isa(phrase.word_class, "Pronoun")):
        return False
    return utterance.is_head(phrase) or phrase.func.kind is Kind.RIGHT_EDGE_RHEME


def _cmp(a: Phrase, b: Phrase) -> int:
    order = compare_tc(a.func, b.func)
    return -1 if order is Order.A_FIRST else 1 if order is Order.B_FIRST else 0


def rank_cf(utterance: Utterance) -> CenterState:
    """Forward-looking centers of ``utterance``, most preferred first.

    Equal-ranked phrases keep surface order; the backward-looking center is
    the highest-ranked anaphor, if any.
    """
    eligible = [p for p in utterance.phrases if cf_eligible(utterance, p)]
    cf = tuple(sorted(eligible, key=cmp_to_key(_cmp)))
    cb = next((p for p in cf if p.func.is_anaphor), None)
    return CenterState(utterance.index, cf, cb)
