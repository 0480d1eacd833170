"""Annotated discourse files.

One ``utterance <n>`` line opens each sentence; phrases and sentence-internal
links follow it::

    utterance 2
    phrase u2-det "die" class=DetDefinite head=u2-cpu func=unmarked
    phrase u2-cpu "CPU" class=Noun det=definite bind=CPU-0005 func=anaphor:ellipsis:subject
    link CPU-0005 has-clock-frequency FREQUENCY-0006

``link`` lines record relations already established by semantic
interpretation of that sentence (roles listed in composition order).
"""
from __future__ import annotations

import shlex
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .centering import FunctionalCategory, Link, Phrase, Utterance
from .errors import DiscourseError
from .kb import Kb
from .protocol import check_bindings


@dataclass(frozen=True)
class DiscourseDocument:
    utterances: tuple[Utterance, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "utterances", tuple(self.utterances))
        seen = set()
        for expected, u in enumerate(self.utterances, 1):
            if u.index != expected:
                raise DiscourseError(f"expected utterance {expected}", utterance=u.index)
            for p in u.phrases:
                if p.id in seen:
                    raise DiscourseError("phrase id reused", utterance=u.index, phrase=p.id)
                seen.add(p.id)


def _tokens(line: str, lineno: int) -> list[str]:
    lexer = shlex.shlex(line, posix=True)
    lexer.whitespace_split = True
    lexer.commenters = "#"
    try:
        return list(lexer)
    except ValueError as exc:
        raise DiscourseError(str(exc), line=lineno) from None


def _parse_phrase(args: list[str], lineno: int, utterance: int) -> Phrase:
    if len(args) < 2:
        raise DiscourseError('expected: phrase <id> "<surface>" key=value ...', line=lineno, utterance=utterance)
    pid, surface = args[0], args[1]
    attrs: dict[str, str] = {}
    for item in args[2:]:
        key, sep, value = item.partition("=")
        if not sep or not value:
            raise DiscourseError(f"malformed attribute {item!r}", line=lineno, utterance=utterance, phrase=pid)
        if key not in ("class", "head", "det", "bind", "func"):
            raise DiscourseError(f"unknown attribute {key!r}", line=lineno, utterance=utterance, phrase=pid)
        if key in attrs:
            raise DiscourseError(f"attribute {key!r} given twice", line=lineno, utterance=utterance, phrase=pid)
        attrs[key] = value
    for required in ("class", "func"):
        if required not in attrs:
            raise DiscourseError(f"missing {required}=", line=lineno, utterance=utterance, phrase=pid)
    if attrs.get("det", "definite") != "definite":
        raise DiscourseError("det= only accepts 'definite'", line=lineno, utterance=utterance, phrase=pid)
    try:
        func = FunctionalCategory.parse(attrs["func"])
    except ValueError as exc:
        raise DiscourseError(str(exc), line=lineno, utterance=utterance, phrase=pid) from None
    return Phrase(
        id=pid,
        surface=surface,
        word_class=attrs["class"],
        func=func,
        head=attrs.get("head"),
        definite="det" in attrs,
        binding=attrs.get("bind"),
    )


def parse_discourse(source: str, kb: Optional[Kb] = None) -> DiscourseDocument:
    """Parse discourse annotation; with ``kb``, bindings and links are checked too."""
    blocks: list[tuple[int, list[Phrase], list[Link], int]] = []
    for lineno, raw in enumerate(source.splitlines(), 1):
        tokens = _tokens(raw, lineno)
        if not tokens:
            continue
        keyword, args = tokens[0], tokens[1:]
        if keyword == "utterance":
            if len(args) != 1 or not args[0].isdigit():
                raise DiscourseError("expected: utterance <n>", line=lineno)
            blocks.append((int(args[0]), [], [], lineno))
            continue
        if not blocks:
            raise DiscourseError(f"{keyword!r} before the first utterance", line=lineno)
        index, phrases, links, _ = blocks[-1]
        if keyword == "phrase":
            phrases.append(_parse_phrase(args, lineno, index))
        elif keyword == "link":
            if len(args) < 3:
                raise DiscourseError("expected: link <SOURCE> <role> [<role> ...] <TARGET>", line=lineno, utterance=index)
            links.append(Link(args[0], tuple(args[1:-1]), args[-1]))
        else:
            raise DiscourseError(f"unknown declaration {keyword!r}", line=lineno)

    utterances = []
    for index, phrases, links, lineno in blocks:
        try:
            utterances.append(Utterance(index, tuple(phrases), tuple(links)))
        except DiscourseError as exc:
            raise DiscourseError(str(exc), line=lineno) from None
    doc = DiscourseDocument(tuple(utterances))
    if kb is not None:
        check_bindings(kb, doc.utterances)
    return doc


def _quote(text: str) -> str:
    if "\n" in text:
        raise ValueError("surface text cannot contain newlines")
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def dump_discourse(doc: DiscourseDocument) -> str:
    lines = []
    for u in doc.utterances:
        lines.append(f"utterance {u.index}")
        for p in u.phrases:
            parts = ["phrase", p.id, _quote(p.surface), f"class={p.word_class}"]
            if p.head is not None:
                parts.append(f"head={p.head}")
            if p.definite:
                parts.append("det=definite")
            if p.binding is not None:
                parts.append(f"bind={p.binding}")
            parts.append(f"func={p.func.token}")
            lines.append(" ".join(parts))
        for link in u.links:
            lines.append(" ".join(["link", link.source, *link.roles, link.target]))
    return "".join(line + "\n" for line in lines)


def read_discourse(path, kb: Optional[Kb] = None) -> DiscourseDocument:
    return parse_discourse(Path(path).read_text(encoding="utf-8"), kb)
