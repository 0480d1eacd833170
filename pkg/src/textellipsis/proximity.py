"""Conceptual distance as the length of the shortest part-of role chain.

Chains run from the antecedent's concept towards the elliptical concept
(whole to part), use only part-of-type roles, never leave the origin's
partition, and stop at any hop whose value restriction subsumes the target
concept. The search is iterative deepening: the order in which (candidate,
depth) pairs are probed is observable in transcripts.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence, Union

from .kb import Kb

DEFAULT_MAX_DEPTH = 5
INFINITE = math.inf


class Probe(NamedTuple):
    candidate: str
    depth: int
    hit: bool


@dataclass(frozen=True)
class RoleChain:
    origin: str
    steps: tuple[tuple[str, str], ...]

    @property
    def depth(self) -> int:
        return len(self.steps)

    @property
    def roles(self) -> tuple[str, ...]:
        return tuple(role for role, _ in self.steps)

    @property
    def terminus(self) -> str:
        return self.steps[-1][1]


@dataclass(frozen=True)
class ProximityResult:
    score: Union[int, float]
    chain: Optional[RoleChain]
    trace: tuple[Probe, ...] = ()

    @property
    def finite(self) -> bool:
        return self.chain is not None


@dataclass
class BridgeProbe:
    """Outcome of sweeping a candidate list depth by depth."""

    target: str
    candidates: tuple[str, ...]
    depth: Optional[int] = None
    winners: dict[str, RoleChain] = field(default_factory=dict)
    trace: list[Probe] = field(default_factory=list)


def chain_at_depth(kb: Kb, origin: str, target: str, depth: int) -> Optional[RoleChain]:
    """First chain of exactly ``depth`` hops from ``origin`` to ``target``.

    Hops are tried in the order given by :meth:`Kb.part_of_edges`, so the
    result is the lexicographically first such chain. Intermediate concepts
    are never revisited; only the final hop may land on a concept already on
    the path.
    """
    start = kb.resolve(origin)
    goal = kb.resolve(target)
    home = kb.partition_of(start)
    steps: list[tuple[str, str]] = []

    def descend(node: str, path: set[str]) -> bool:
        last = len(steps) + 1 == depth
        for role, rng in kb.part_of_edges(node):
            if kb.partition_of(rng) != home:
                continue
            if last:
                if kb.subsumes(rng, goal):
                    steps.append((role, rng))
                    return True
            elif rng not in path:
                steps.append((role, rng))
                path.add(rng)
                if descend(rng, path):
                    return True
                path.discard(rng)
                steps.pop()
        return False

    if depth >= 1 and descend(start, {start}):
        return RoleChain(origin, tuple(steps))
    return None


def proximity_score(kb: Kb, from_: str, to: str, max_depth: int = DEFAULT_MAX_DEPTH) -> ProximityResult:
    if max_depth < 1:
        raise ValueError("max_depth must be at least 1")
    kb.resolve(from_)
    kb.resolve(to)
    trace = []
    for depth in range(1, max_depth + 1):
        chain = chain_at_depth(kb, from_, to, depth)
        trace.append(Probe(from_, depth, chain is not None))
        if chain is not None:
            return ProximityResult(depth, chain, tuple(trace))
    return ProximityResult(INFINITE, None, tuple(trace))


def bridge_probe(kb: Kb, candidates: Sequence[str], target: str, max_depth: int = DEFAULT_MAX_DEPTH) -> BridgeProbe:
    """Probe every candidate at depth 1, then depth 2, and so on.

    The sweep stops at the first probe that connects to ``target``; the
    trace ends with that probe. The remaining candidates are still checked
    at the same depth, off the trace, so ``winners`` holds every candidate
    connecting at the minimal depth, in candidate order.
    """
    if max_depth < 1:
        raise ValueError("max_depth must be at least 1")
    kb.resolve(target)
    for c in candidates:
        kb.resolve(c)
    probe = BridgeProbe(target, tuple(candidates))
    for depth in range(1, max_depth + 1):
        for i, cand in enumerate(candidates):
            chain = chain_at_depth(kb, cand, target, depth)
            probe.trace.append(Probe(cand, depth, chain is not None))
            if chain is None:
                continue
            probe.depth = depth
            probe.winners[cand] = chain
            for other in candidates[i + 1:]:
                rival = chain_at_depth(kb, other, target, depth)
                if rival is not None:
                    probe.winners.setdefault(other, rival)
            return probe
    return probe
