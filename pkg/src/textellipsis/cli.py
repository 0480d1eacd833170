"""Command-line entry point: ``textellipsis --kb FILE --text FILE [options]``."""
from __future__ import annotations

import argparse
import sys

from .discourse import read_discourse
from .errors import TextEllipsisError
from .kb import lint_balanced_deepening, lint_basic_categories, read_kb
from .protocol import run_discourse
from .proximity import DEFAULT_MAX_DEPTH
from .resolver import GATE_LABEL
from .transcript import emit_transcript, format_link


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="textellipsis",
        description="Resolve textual ellipsis in annotated discourse against a terminological KB.",
    )
    parser.add_argument("--kb", required=True, help="knowledge base file")
    parser.add_argument("--text", required=True, help="annotated discourse file")
    parser.add_argument("--max-depth", type=int, default=DEFAULT_MAX_DEPTH, help="longest role chain considered (default: %(default)s)")
    parser.add_argument("--transcript", action="store_true", help="print one transcript per resolution episode")
    parser.add_argument("--lint", action="store_true", help="lint the KB before resolving")
    parser.add_argument("--lint-threshold", type=int, default=2, help="balanced-deepening threshold (default: %(default)s)")
    parser.add_argument("--log", action="store_true", help="print the message log")
    return parser


def summary(run) -> str:
    lines = [GATE_LABEL]
    for r in run.resolutions:
        lines.append(f"resolved {r.target.binding} <- {r.antecedent.binding} {format_link(r.link)} depth {r.chain.depth}"
                     + (" (tie broken by topic/comment order)" if r.tie_broken_by_tc else ""))
    for e in run.unresolved:
        lines.append(f"unresolved {e.target.binding}")
    for s in run.skipped:
        lines.append(f"skipped {s.target.binding}: {s.reason}")
    return "".join(line + "\n" for line in lines)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.max_depth < 1:
        print("textellipsis: --max-depth must be at least 1", file=sys.stderr)
        return 2
    try:
        kb = read_kb(args.kb)
        doc = read_discourse(args.text, kb)
        run = run_discourse(kb, doc.utterances, args.max_depth)
    except (OSError, TextEllipsisError) as exc:
        print(f"textellipsis: {exc}", file=sys.stderr)
        return 1

    out = []
    if args.lint:
        out.append(lint_basic_categories(kb).format())
        out.append(lint_balanced_deepening(kb, args.lint_threshold).format())
    if args.transcript:
        out.append("\n".join(emit_transcript(e) for e in run.episodes))
    else:
        out.append(summary(run))
    if args.log:
        out.append(run.format_log())
    sys.stdout.write("".join(out))
    return 0


if __name__ == "__main__":
    sys.exit(main())
