"""Plain-text transcripts of resolution episodes."""
from __future__ import annotations

from .centering import Link
from .resolver import Episode


def format_link(link: Link) -> str:
    roles = [r.upper() for r in link.roles]
    rel = roles[0] if len(roles) == 1 else f"(COMPOSE {' '.join(roles)})"
    return f"({link.source.upper()} {rel} {link.target.upper()})"


def emit_transcript(episode: Episode) -> str:
    """Header, one line per probe, then the asserted link if one was found."""
    names = " ".join(c.binding.upper() for c in episode.candidates)
    lines = [f"(preferred-cb ({names}) {episode.target.binding.upper()})"]
    for probe in episode.trace:
        lines.append(f"{probe.candidate.upper()} - depth:{probe.depth} {'TRUE' if probe.hit else 'NIL'}")
    if episode.resolution is not None:
        lines.append(f"==> {format_link(episode.resolution.link)}")
    return "".join(line + "\n" for line in lines)
