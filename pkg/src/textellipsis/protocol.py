"""Word-actor protocol for text ellipsis, replayed on a single FIFO queue.

Actors share nothing and talk only through messages addressed to their
acquaintances: each word actor knows the delimiter of its sentence, each
sentence delimiter knows its C_f and the delimiter of the preceding
sentence. One resolution episode runs to quiescence before the next starts.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .centering import CenterState, Phrase, Utterance, rank_cf, word_class_isa
from .errors import DiscourseError, ProtocolError
from .kb import Kb
from .proximity import DEFAULT_MAX_DEPTH
from .resolver import (
    BridgeStore,
    Episode,
    Resolution,
    assert_bridge,
    linked_in_utterance,
    nominal_anaphora_gate,
    search_bridge,
)


class ActorKind(enum.Enum):
    WORD_ACTOR = "WordActor"
    SENTENCE_DELIMITER = "SentenceDelimiter"


class Variant(enum.Enum):
    SEARCH_NOM_ANTECEDENT = "SearchNomAntecedent"
    SEARCH_TEXT_ELLIPSIS_ANTECEDENT = "SearchTextEllipsisAntecedent"
    TEXT_ELLIPSIS_ANTECEDENT_FOUND = "TextEllipsisAntecedentFound"


@dataclass
class Actor:
    id: str
    kind: ActorKind
    acquaintances: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Message:
    variant: Variant
    initiator: str
    recipient: str
    phase: Optional[int] = None
    resolution: Optional[Resolution] = None

    def format(self, seq: int) -> str:
        phase = f"[{self.phase}]" if self.phase is not None else ""
        return f"{seq} {self.variant.value}{phase} {self.initiator} -> {self.recipient}"


@dataclass
class Skipped:
    target: Phrase
    reason: str


@dataclass
class DiscourseRun:
    centers: list[CenterState] = field(default_factory=list)
    episodes: list[Episode] = field(default_factory=list)
    resolutions: list[Resolution] = field(default_factory=list)
    skipped: list[Skipped] = field(default_factory=list)
    log: list[Message] = field(default_factory=list)
    store: BridgeStore = field(default_factory=BridgeStore)

    @property
    def unresolved(self) -> list[Episode]:
        return [e for e in self.episodes if not e.resolved]

    def format_log(self) -> str:
        return "".join(m.format(i) + "\n" for i, m in enumerate(self.log, 1))


def delimiter_id(index: int) -> str:
    return f"delimiter-{index}"


class Engine:
    def __init__(self, kb: Kb, max_depth: int = DEFAULT_MAX_DEPTH, store: Optional[BridgeStore] = None):
        if max_depth < 1:
            raise ValueError("max_depth must be at least 1")
        self.kb = kb
        self.max_depth = max_depth
        self.actors: dict[str, Actor] = {}
        self.queue: deque[Message] = deque()
        self.run_state = DiscourseRun(store=store if store is not None else BridgeStore())
        self._last_delimiter: Optional[str] = None

    @property
    def store(self) -> BridgeStore:
        return self.run_state.store

    def add_utterance(self, utterance: Utterance) -> Actor:
        """Create the utterance's actors and record its semantic links."""
        center = rank_cf(utterance)
        delim = Actor(
            delimiter_id(utterance.index),
            ActorKind.SENTENCE_DELIMITER,
            {"C_f": center, "utterance": utterance, "previous": self._last_delimiter},
        )
        if delim.id in self.actors:
            raise ProtocolError(f"utterance {utterance.index} added twice")
        self.actors[delim.id] = delim
        for p in utterance.phrases:
            if p.id in self.actors:
                raise DiscourseError("phrase id reused across utterances", utterance=utterance.index, phrase=p.id)
            self.actors[p.id] = Actor(p.id, ActorKind.WORD_ACTOR, {"phrase": p, "delimiter": delim.id})
        for link in utterance.links:
            self.store.add_link(link)
        self.run_state.centers.append(center)
        self._last_delimiter = delim.id
        return delim

    def send(self, message: Message) -> None:
        self.queue.append(message)

    def run(self) -> None:
        while self.queue:
            self.dispatch(self.queue.popleft())

    def start_episode(self, phrase_id: str) -> bool:
        """Send SearchNomAntecedent for a word actor; False if there is no
        preceding sentence to search."""
        word = self._actor(phrase_id)
        previous = self._actor(word.acquaintances["delimiter"]).acquaintances["previous"]
        if previous is None:
            return False
        self.send(Message(Variant.SEARCH_NOM_ANTECEDENT, word.id, previous))
        return True

    def dispatch(self, message: Message) -> list[Message]:
        """Deliver one message; emitted messages are queued and returned."""
        self.run_state.log.append(message)
        actor = self._actor(message.recipient)
        handler = {
            Variant.SEARCH_NOM_ANTECEDENT: self._on_search_nom,
            Variant.SEARCH_TEXT_ELLIPSIS_ANTECEDENT: self._on_search_ellipsis,
            Variant.TEXT_ELLIPSIS_ANTECEDENT_FOUND: self._on_found,
        }[message.variant]
        emitted = handler(actor, message)
        for m in emitted:
            self.send(m)
        return emitted

    def _actor(self, actor_id: str) -> Actor:
        try:
            return self.actors[actor_id]
        except KeyError:
            raise ProtocolError(f"message to unknown actor {actor_id!r}") from None

    def _initiator_phrase(self, message: Message) -> tuple[Phrase, Actor]:
        word = self._actor(message.initiator)
        if word.kind is not ActorKind.WORD_ACTOR:
            raise ProtocolError(f"{message.variant.value} initiated by non-word actor {word.id!r}")
        return word.acquaintances["phrase"], word

    def _on_search_nom(self, actor: Actor, message: Message) -> list[Message]:
        if actor.kind is not ActorKind.SENTENCE_DELIMITER:
            raise ProtocolError("SearchNomAntecedent must be addressed to a sentence delimiter")
        phrase, word = self._initiator_phrase(message)
        if nominal_anaphora_gate(self.kb, phrase, actor.acquaintances["C_f"]):
            self.run_state.skipped.append(Skipped(phrase, "nominal anaphor"))
            return []
        own = self._actor(word.acquaintances["delimiter"]).acquaintances["utterance"]
        if linked_in_utterance(self.kb, phrase, own, self.store):
            self.run_state.skipped.append(Skipped(phrase, "linked within its sentence"))
            return []
        return [Message(Variant.SEARCH_TEXT_ELLIPSIS_ANTECEDENT, word.id, actor.id, phase=1)]

    def _on_search_ellipsis(self, actor: Actor, message: Message) -> list[Message]:
        if message.phase == 1:
            if actor.kind is ActorKind.WORD_ACTOR:
                return [Message(message.variant, message.initiator, actor.acquaintances["delimiter"], phase=1)]
            word = self._actor(message.initiator)
            if actor.id == word.acquaintances["delimiter"]:
                # still in the initiator's own sentence: one hop back
                previous = actor.acquaintances["previous"]
                if previous is None:
                    raise ProtocolError(f"no sentence precedes {actor.id}")
                return [Message(message.variant, message.initiator, previous, phase=1)]
            return [Message(message.variant, message.initiator, actor.id, phase=2)]
        if message.phase != 2:
            raise ProtocolError(f"bad phase {message.phase!r}")
        if actor.kind is not ActorKind.SENTENCE_DELIMITER:
            raise ProtocolError("phase-2 SearchTextEllipsisAntecedent arrived at a non-delimiter")
        phrase, _ = self._initiator_phrase(message)
        episode = search_bridge(self.kb, phrase, actor.acquaintances["C_f"], self.max_depth)
        self.run_state.episodes.append(episode)
        if episode.resolution is None:
            return []
        return [
            Message(
                Variant.TEXT_ELLIPSIS_ANTECEDENT_FOUND,
                episode.resolution.antecedent.id,
                message.initiator,
                resolution=episode.resolution,
            )
        ]

    def _on_found(self, actor: Actor, message: Message) -> list[Message]:
        if actor.kind is not ActorKind.WORD_ACTOR or message.resolution is None:
            raise ProtocolError("TextEllipsisAntecedentFound must carry a resolution to a word actor")
        assert_bridge(self.store, message.resolution)
        self.run_state.resolutions.append(message.resolution)
        return []


def ellipsis_targets(utterance: Utterance) -> list[Phrase]:
    """Definite, bound nouns in surface order."""
    return [
        p for p in utterance.phrases
        if word_class_isa(p.word_class, "Noun") and p.definite and p.binding is not None
    ]


def check_bindings(kb: Kb, utterances: Iterable[Utterance]) -> None:
    last = None
    for u in utterances:
        if last is not None and u.index <= last:
            raise DiscourseError("utterance indices must increase", utterance=u.index)
        last = u.index
        for p in u.phrases:
            if p.binding is not None and not (kb.has_instance(p.binding) or kb.has_concept(p.binding)):
                raise DiscourseError(f"binding {p.binding!r} is not in the knowledge base", utterance=u.index, phrase=p.id)
        for link in u.links:
            for end in (link.source, link.target):
                if not (kb.has_instance(end) or kb.has_concept(end)):
                    raise DiscourseError(f"link endpoint {end!r} is not in the knowledge base", utterance=u.index)
            for role in link.roles:
                try:
                    kb.role_index(role)
                except KeyError:
                    raise DiscourseError(f"link role {role!r} is not in the knowledge base", utterance=u.index) from None


def run_discourse(kb: Kb, utterances: Iterable[Utterance], max_depth: int = DEFAULT_MAX_DEPTH) -> DiscourseRun:
    utterances = list(utterances)
    check_bindings(kb, utterances)
    engine = Engine(kb, max_depth)
    for u in utterances:
        engine.add_utterance(u)
        for target in ellipsis_targets(u):
            if engine.start_episode(target.id):
                engine.run()
    return engine.run_state
