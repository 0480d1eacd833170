"""Bridging resolution for textual ellipsis.

Combines shortest part-of role chains in a terminological knowledge base with
a topic/comment ranking of forward-looking centers.
"""
from .centering import (
    AnaphorKind,
    CenterState,
    FunctionalCategory,
    GrammFunction,
    Kind,
    Link,
    Order,
    Phrase,
    Utterance,
    compare_tc,
    rank_cf,
)
from .discourse import DiscourseDocument, dump_discourse, parse_discourse, read_discourse
from .errors import *  # noqa: F401,F403
from .kb import (
    Concept,
    Instance,
    Kb,
    Permit,
    Role,
    dump_kb,
    lint_balanced_deepening,
    lint_basic_categories,
    load_kb,
    outgoing_roles,
    read_kb,
    subsumes,
)
from .protocol import Engine, run_discourse
from .proximity import INFINITE, RoleChain, bridge_probe, proximity_score
from .resolver import (
    BridgeStore,
    Episode,
    Resolution,
    assert_bridge,
    is_potential_elliptic_antecedent,
    nominal_anaphora_gate,
    preferred_conceptual_bridge,
    search_bridge,
    trigger_check,
)
from .transcript import emit_transcript

__version__ = "0.1.0"
