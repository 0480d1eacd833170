"""Terminological knowledge base: concept and role taxonomies, permit relation,
instances and partitions.

A :class:`Kb` is immutable once built. Construction validates every reference,
rejects cycles in either taxonomy and checks that partition tags stay constant
along ``isa`` descent. Declaration order is preserved because it is the
deterministic tie-break for role chains of equal length.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from graphlib import CycleError, TopologicalSorter
from pathlib import Path
from typing import Optional

from .errors import (
    DanglingReferenceError,
    IsaCycleError,
    KbError,
    KbSyntaxError,
    PartitionConflictError,
    UnknownNameError,
)

PART_OF_ROOT = "has-part"


@dataclass(frozen=True)
class Concept:
    name: str
    parents: tuple[str, ...] = ()
    partition: Optional[str] = None


@dataclass(frozen=True)
class Role:
    name: str
    parent: Optional[str] = None


@dataclass(frozen=True)
class Permit:
    domain: str
    role: str
    range: str


@dataclass(frozen=True)
class Instance:
    name: str
    concept: str


@dataclass(frozen=True)
class Kb:
    concepts: tuple[Concept, ...] = ()
    roles: tuple[Role, ...] = ()
    permits: tuple[Permit, ...] = ()
    instances: tuple[Instance, ...] = ()
    _ix: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        for attr in ("concepts", "roles", "permits", "instances"):
            object.__setattr__(self, attr, tuple(getattr(self, attr)))
        object.__setattr__(self, "_ix", _build_index(self))

    # -- lookups -----------------------------------------------------------

    def has_concept(self, name: str) -> bool:
        return name in self._ix["concepts"]

    def has_instance(self, name: str) -> bool:
        return name in self._ix["instances"]

    def concept(self, name: str) -> Concept:
        try:
            return self._ix["concepts"][name]
        except KeyError:
            raise UnknownNameError(f"unknown concept {name!r}") from None

    def instance(self, name: str) -> Instance:
        try:
            return self._ix["instances"][name]
        except KeyError:
            raise UnknownNameError(f"unknown instance {name!r}") from None

    def resolve(self, name: str) -> str:
        """Concept name for a concept or instance name."""
        if name in self._ix["concepts"]:
            return name
        if name in self._ix["instances"]:
            return self._ix["instances"][name].concept
        raise UnknownNameError(f"unknown concept or instance {name!r}")

    def role_index(self, role: str) -> int:
        try:
            return self._ix["role_order"][role]
        except KeyError:
            raise UnknownNameError(f"unknown role {role!r}") from None

    def is_part_of(self, role: str) -> bool:
        self.role_index(role)
        return role in self._ix["part_of"]

    def ancestors(self, concept: str) -> frozenset[str]:
        """Reflexive-transitive ``isa`` ancestors of ``concept``."""
        self.concept(concept)
        return self._ix["ancestors"][concept]

    def descendants(self, concept: str) -> frozenset[str]:
        self.concept(concept)
        return frozenset(c for c, anc in self._ix["ancestors"].items() if concept in anc)

    def subsumes(self, ancestor: str, descendant: str) -> bool:
        self.concept(ancestor)
        return ancestor in self.ancestors(descendant)

    def partition_of(self, name: str) -> Optional[str]:
        """Effective partition tag of a concept or instance (None = default)."""
        return self._ix["partition"][self.resolve(name)]

    def top_level(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.concepts if not c.parents)

    def outgoing_roles(self, concept: str) -> set[tuple[str, str]]:
        return {(p.role, p.range) for _, p in self._inherited_permits(concept)}

    def part_of_edges(self, concept: str) -> tuple[tuple[str, str], ...]:
        """Inherited part-of ``(role, range)`` hops from ``concept``.

        Ordered by role declaration, then by declaration of the range concept.
        """
        cache = self._ix["edges"]
        if concept not in cache:
            hops = {(p.role, p.range) for _, p in self._inherited_permits(concept) if p.role in self._ix["part_of"]}
            order = self._ix["concept_order"]
            cache[concept] = tuple(sorted(hops, key=lambda h: (self._ix["role_order"][h[0]], order[h[1]])))
        return cache[concept]

    def _inherited_permits(self, concept: str):
        ancestors = self.ancestors(concept)
        return [(i, p) for i, p in enumerate(self.permits) if p.domain in ancestors]

    # -- derived views ----------------------------------------------------

    @property
    def isa(self) -> frozenset[tuple[str, str]]:
        return frozenset((c.name, p) for c in self.concepts for p in c.parents)

    @property
    def partitions(self) -> dict[str, str]:
        return {c.name: c.partition for c in self.concepts if c.partition is not None}


def _build_index(kb: Kb) -> dict:
    concepts: dict[str, Concept] = {}
    for c in kb.concepts:
        if not c.name:
            raise KbError("concept with empty name")
        if c.name in concepts:
            raise KbError(f"concept {c.name!r} declared twice")
        concepts[c.name] = c
    roles: dict[str, Role] = {}
    for r in kb.roles:
        if not r.name:
            raise KbError("role with empty name")
        if r.name in roles:
            raise KbError(f"role {r.name!r} declared twice")
        roles[r.name] = r
    instances: dict[str, Instance] = {}
    for inst in kb.instances:
        if inst.name in instances or inst.name in concepts:
            raise KbError(f"instance name {inst.name!r} already in use")
        instances[inst.name] = inst

    for c in concepts.values():
        for p in c.parents:
            if p not in concepts:
                raise DanglingReferenceError(f"concept {c.name!r}: isa parent {p!r} is not declared")
    for r in roles.values():
        if r.parent is not None and r.parent not in roles:
            raise DanglingReferenceError(f"role {r.name!r}: parent {r.parent!r} is not declared")
    seen_permits = set()
    for p in kb.permits:
        for end in (p.domain, p.range):
            if end not in concepts:
                raise DanglingReferenceError(f"permit {p.domain} {p.role} {p.range}: concept {end!r} is not declared")
        if p.role not in roles:
            raise DanglingReferenceError(f"permit {p.domain} {p.role} {p.range}: role {p.role!r} is not declared")
        if p in seen_permits:
            raise KbError(f"permit {p.domain} {p.role} {p.range} declared twice")
        seen_permits.add(p)
    for inst in instances.values():
        if inst.concept not in concepts:
            raise DanglingReferenceError(f"instance {inst.name!r}: class {inst.concept!r} is not declared")
    if (roles or kb.permits) and PART_OF_ROOT not in roles:
        raise KbError(f"the root part-of role {PART_OF_ROOT!r} must be declared")

    try:
        topo_order = list(TopologicalSorter({c.name: c.parents for c in kb.concepts}).static_order())
    except CycleError as exc:
        raise IsaCycleError(f"isa cycle: {' -> '.join(exc.args[1])}") from None
    try:
        role_topo = TopologicalSorter({r.name: (r.parent,) if r.parent else () for r in kb.roles})
        role_topo.prepare()
    except CycleError as exc:
        raise KbError(f"role taxonomy cycle: {' -> '.join(exc.args[1])}") from None

    # parents come first in static_order
    ancestors: dict[str, frozenset[str]] = {}
    partition: dict[str, Optional[str]] = {}
    for name in topo_order:
        c = concepts[name]
        anc = {name}
        for p in c.parents:
            anc |= ancestors[p]
        ancestors[name] = frozenset(anc)
        inherited = {partition[p] for p in c.parents} - {None}
        if c.partition is not None:
            clash = inherited - {c.partition}
            if clash:
                raise PartitionConflictError(
                    f"concept {name!r} tagged {c.partition!r} but inherits {sorted(clash)[0]!r}"
                )
            partition[name] = c.partition
        elif len(inherited) > 1:
            raise PartitionConflictError(f"concept {name!r} inherits conflicting partitions {sorted(inherited)}")
        else:
            partition[name] = next(iter(inherited), None)

    part_of = set()
    for r in kb.roles:
        cur: Optional[str] = r.name
        while cur is not None:
            if cur == PART_OF_ROOT:
                part_of.add(r.name)
                break
            cur = roles[cur].parent

    return {
        "concepts": concepts,
        "roles": roles,
        "instances": instances,
        "role_order": {r.name: i for i, r in enumerate(kb.roles)},
        "concept_order": {c.name: i for i, c in enumerate(kb.concepts)},
        "part_of": frozenset(part_of),
        "ancestors": ancestors,
        "partition": partition,
        "edges": {},
    }


# -- functional surface --------------------------------------------------------


def subsumes(kb: Kb, ancestor: str, descendant: str) -> bool:
    return kb.subsumes(ancestor, descendant)


def outgoing_roles(kb: Kb, concept: str) -> set[tuple[str, str]]:
    return kb.outgoing_roles(concept)


# -- text format ---------------------------------------------------------------


def load_kb(source: str) -> Kb:
    """Parse the line-oriented KB format and return a validated :class:`Kb`.

    Declarations may come in any order; references are resolved after the
    whole document has been read.
    """
    concepts, roles, permits, instances = [], [], [], []
    for lineno, raw in enumerate(source.splitlines(), 1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        keyword, args = tokens[0], tokens[1:]
        if keyword == "concept":
            concepts.append(_parse_concept(args, lineno))
        elif keyword == "role":
            if len(args) == 1:
                roles.append(Role(args[0]))
            elif len(args) == 3 and args[1] == "isa":
                roles.append(Role(args[0], args[2]))
            else:
                raise KbSyntaxError("expected: role <name> [isa <name>]", lineno)
        elif keyword == "permit":
            if len(args) != 3:
                raise KbSyntaxError("expected: permit <CONCEPT> <role> <CONCEPT>", lineno)
            permits.append(Permit(*args))
        elif keyword == "instance":
            if len(args) != 3 or args[1] != ":":
                raise KbSyntaxError("expected: instance <NAME> : <CONCEPT>", lineno)
            instances.append(Instance(args[0], args[2]))
        else:
            raise KbSyntaxError(f"unknown declaration {keyword!r}", lineno)
    return Kb(concepts, roles, permits, instances)


def _parse_concept(args: list[str], lineno: int) -> Concept:
    if not args or args[0] in ("isa", "partition"):
        raise KbSyntaxError("concept declaration without a name", lineno)
    name, rest = args[0], args[1:]
    parents: list[str] = []
    tag = None
    if rest and rest[0] == "isa":
        rest = rest[1:]
        while rest and rest[0] != "partition":
            parents.append(rest.pop(0))
        if not parents:
            raise KbSyntaxError("'isa' needs at least one parent", lineno)
    if rest:
        if rest[0] != "partition" or len(rest) != 2:
            raise KbSyntaxError("expected: concept <NAME> [isa <NAME> ...] [partition <TAG>]", lineno)
        tag = rest[1]
    return Concept(name, tuple(parents), tag)


def dump_kb(kb: Kb) -> str:
    lines = []
    for c in kb.concepts:
        parts = ["concept", c.name]
        if c.parents:
            parts += ["isa", *c.parents]
        if c.partition is not None:
            parts += ["partition", c.partition]
        lines.append(" ".join(parts))
    for r in kb.roles:
        lines.append(f"role {r.name}" + (f" isa {r.parent}" if r.parent else ""))
    for p in kb.permits:
        lines.append(f"permit {p.domain} {p.role} {p.range}")
    for i in kb.instances:
        lines.append(f"instance {i.name} : {i.concept}")
    return "".join(line + "\n" for line in lines)


def read_kb(path) -> Kb:
    return load_kb(Path(path).read_text(encoding="utf-8"))


# -- knowledge-engineering lint --------------------------------------------------


@dataclass
class BasicCategoryReport:
    top_level: tuple[str, ...] = ()
    ambiguous_instances: tuple[tuple[str, tuple[str, ...]], ...] = ()
    untagged: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not (self.ambiguous_instances or self.untagged)

    def format(self) -> str:
        lines = [f"basic categories: {' '.join(self.top_level) or '(none)'}"]
        for inst, tops in self.ambiguous_instances:
            found = " ".join(tops) or "(none)"
            lines.append(f"  instance {inst} belongs to {len(tops)} basic categories: {found}")
        for c in self.untagged:
            lines.append(f"  concept {c} has no partition tag")
        return "\n".join(lines) + "\n"


def lint_basic_categories(kb: Kb) -> BasicCategoryReport:
    """Check that basic categories partition the instances and are tagged.

    Reports the top-level concepts, every instance that does not fall under
    exactly one of them, and every concept left in the default partition.
    """
    tops = kb.top_level()
    ambiguous = []
    for inst in kb.instances:
        anc = kb.ancestors(inst.concept)
        owning = tuple(t for t in tops if t in anc)
        if len(owning) != 1:
            ambiguous.append((inst.name, owning))
    untagged = tuple(c.name for c in kb.concepts if kb.partition_of(c.name) is None)
    return BasicCategoryReport(tops, tuple(ambiguous), untagged)


@dataclass
class CategoryDepth:
    category: str
    max_depth: int
    min_depth: int
    flagged: bool


@dataclass
class BalanceReport:
    threshold: int
    categories: list[CategoryDepth] = field(default_factory=list)

    @property
    def flagged(self) -> list[CategoryDepth]:
        return [c for c in self.categories if c.flagged]

    @property
    def ok(self) -> bool:
        return not self.flagged

    def format(self) -> str:
        lines = [f"balanced deepening (threshold {self.threshold}):"]
        for c in self.categories:
            mark = "  IMBALANCED" if c.flagged else ""
            lines.append(f"  {c.category}: max {c.max_depth} min {c.min_depth}{mark}")
        return "\n".join(lines) + "\n"


def decomposition_depth(kb: Kb, concept: str) -> int:
    """Length of the longest simple part-of chain starting at ``concept``,
    confined to the concept's partition."""
    home = kb.partition_of(concept)

    def longest(node: str, path: frozenset[str]) -> int:
        best = 0
        for _, rng in kb.part_of_edges(node):
            if rng in path or kb.partition_of(rng) != home:
                continue
            best = max(best, 1 + longest(rng, path | {rng}))
        return best

    return longest(concept, frozenset([concept]))


def lint_balanced_deepening(kb: Kb, threshold: int = 2) -> BalanceReport:
    """Compare part-of decomposition depth across each basic category.

    Only "wholes" are compared: strict descendants of the category that are
    not themselves the value of some part-of role. A category with no wholes
    reports 0/0.
    """
    part_ranges = {p.range for p in kb.permits if kb.is_part_of(p.role)}
    report = BalanceReport(threshold)
    for top in kb.top_level():
        depths = [
            decomposition_depth(kb, c)
            for c in sorted(kb.descendants(top) - {top}, key=_decl_order(kb))
            if not (kb.ancestors(c) & part_ranges)
        ]
        hi, lo = (max(depths), min(depths)) if depths else (0, 0)
        report.categories.append(CategoryDepth(top, hi, lo, hi - lo > threshold))
    return report


def _decl_order(kb: Kb):
    order = {c.name: i for i, c in enumerate(kb.concepts)}
    return order.__getitem__

