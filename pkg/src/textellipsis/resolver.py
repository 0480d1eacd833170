"""Ellipsis predicates: trigger gate, potential antecedents, preferred bridge.

A phrase bound to an instance is scored through the instance's class;
bridges are asserted between instances, in a store kept apart from the Kb.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .centering import CenterState, Link, Order, Phrase, Utterance, compare_tc, word_class_isa
from .errors import DuplicateAssertionError, ResolutionError
from .kb import Kb
from .proximity import DEFAULT_MAX_DEPTH, Probe, RoleChain, bridge_probe

GATE_LABEL = "gate: subsumption-stub"


@dataclass(frozen=True)
class Resolution:
    target: Phrase
    antecedent: Phrase
    chain: RoleChain
    trace: tuple[Probe, ...]
    tie_broken_by_tc: bool = False
    candidates: tuple[Phrase, ...] = ()

    @property
    def link(self) -> Link:
        return Link(self.antecedent.binding, self.chain.roles, self.target.binding)


@dataclass(frozen=True)
class Episode:
    """One evaluation of the preferred-bridge predicate for one target."""

    target: Phrase
    candidates: tuple[Phrase, ...]
    trace: tuple[Probe, ...]
    resolution: Optional[Resolution] = None

    @property
    def resolved(self) -> bool:
        return self.resolution is not None


def _concept(kb: Kb, phrase: Phrase) -> str:
    if phrase.binding is None:
        raise ResolutionError(f"phrase {phrase.id!r} is not bound to a concept or instance")
    return kb.resolve(phrase.binding)


def nominal_anaphora_gate(kb: Kb, target: Phrase, prior_cf: CenterState) -> bool:
    """True when ``target`` reads as a nominal anaphor of some prior center.

    Stand-in for a full anaphora resolver: a center counts as an antecedent
    iff the target's concept subsumes the center's concept.
    """
    concept = _concept(kb, target)
    return any(p.binding is not None and kb.subsumes(concept, kb.resolve(p.binding)) for p in prior_cf.cf)


def is_potential_elliptic_antecedent(x: Phrase, y: Phrase, n: int, cf_prev: CenterState) -> bool:
    return (
        word_class_isa(x.word_class, "Noun")
        and word_class_isa(y.word_class, "Noun")
        and y.definite
        and y.utterance == n
        and cf_prev.utterance == n - 1
        and x in cf_prev.cf
    )


def search_bridge(kb: Kb, y: Phrase, cf_prev: CenterState, max_depth: int = DEFAULT_MAX_DEPTH) -> Episode:
    """Evaluate the preferred-bridge predicate and keep the full probe trace."""
    _concept(kb, y)
    candidates = tuple(
        x for x in cf_prev.cf
        if x.binding is not None and is_potential_elliptic_antecedent(x, y, y.utterance, cf_prev)
    )
    if not candidates:
        return Episode(y, (), ())
    probe = bridge_probe(kb, [x.binding for x in candidates], y.binding, max_depth)
    trace = tuple(probe.trace)
    winners = [x for x in candidates if x.binding in probe.winners]
    if not winners:
        return Episode(y, candidates, trace)

    # candidates keep C_f order, so the first undominated winner is also the
    # earliest one when several are TC-equal
    best = next(x for x in winners if not any(compare_tc(z.func, x.func) is Order.A_FIRST for z in winners))
    tie_broken = any(compare_tc(best.func, z.func) is Order.A_FIRST for z in winners)
    resolution = Resolution(y, best, probe.winners[best.binding], trace, tie_broken, candidates)
    return Episode(y, candidates, trace, resolution)


def preferred_conceptual_bridge(
    kb: Kb, y: Phrase, cf_prev: CenterState, max_depth: int = DEFAULT_MAX_DEPTH
) -> Optional[Resolution]:
    return search_bridge(kb, y, cf_prev, max_depth).resolution


@dataclass
class BridgeStore:
    """Discourse-level assertions layered over an immutable Kb.

    ``links`` holds every instance-level relation (sentence-internal ones from
    semantic interpretation and asserted bridges); ``bridges`` indexes the
    asserted bridges by target.
    """

    links: list[Link] = field(default_factory=list)
    bridges: dict[str, Link] = field(default_factory=dict)

    def add_link(self, link: Link) -> None:
        self.links.append(link)

    def connected(self, kb: Kb, a: str, b: str) -> bool:
        """Whether a part-of-type link joins ``a`` and ``b`` in either direction."""
        for link in self.links:
            if {link.source, link.target} == {a, b} and all(kb.is_part_of(r) for r in link.roles):
                return True
        return False


def assert_bridge(store: BridgeStore, resolution: Resolution) -> BridgeStore:
    link = resolution.link
    if link.target in store.bridges:
        raise DuplicateAssertionError(f"a bridge to {link.target} has already been asserted")
    store.bridges[link.target] = link
    store.links.append(link)
    return store


def linked_in_utterance(kb: Kb, y: Phrase, utterance: Utterance, store: BridgeStore) -> bool:
    others = {p.binding for p in utterance.phrases if p.id != y.id and p.binding is not None} - {y.binding}
    return any(store.connected(kb, y.binding, o) for o in others)


def trigger_check(kb: Kb, y: Phrase, current_utterance: Utterance, prior_cf: CenterState, store: BridgeStore) -> bool:
    """Whether ellipsis resolution should start for ``y``.

    It does when ``y`` is not a nominal anaphor and semantic interpretation
    has not already attached it partonomically within its own sentence.
    """
    if nominal_anaphora_gate(kb, y, prior_cf):
        return False
    return not linked_in_utterance(kb, y, current_utterance, store)
