"""``annotate`` command line entry point."""
from __future__ import annotations

import argparse
import json
import sys

from .annotate import (
    RawTranscriptError,
    annotate_records,
    load_disfluency_lexicon,
    parse_raw,
    write_bundle,
)
from .engine import EngineUnavailableError, make_engine


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="annotate",
        description="Convert raw referential-game transcripts into an annotated corpus bundle.",
    )
    parser.add_argument("--in", dest="raw", required=True, help="raw transcript .ndj file")
    parser.add_argument("--lang", default="nl", help="language tag (builtin engine: nl only)")
    parser.add_argument(
        "--disfluencies", required=True,
        help="newline-separated surface forms to flag as disfluent",
    )
    parser.add_argument("-o", "--out", required=True, help="output bundle directory")
    parser.add_argument(
        "--engine", choices=("builtin", "spacy"), default="builtin",
        help="annotation engine (default: builtin)",
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        engine = make_engine(args.engine, args.lang)
        records = parse_raw(args.raw)
        lexicon = load_disfluency_lexicon(args.disfluencies)
        annotated = annotate_records(records, engine, lexicon)
        out = write_bundle(annotated, args.out)
    except (RawTranscriptError, EngineUnavailableError, FileNotFoundError) as exc:
        print(
            json.dumps({"error": {"type": type(exc).__name__, "message": str(exc)}}),
            file=sys.stderr,
        )
        return 1
    unmapped = sorted(getattr(engine, "unmapped", ()))
    result = {
        "ok": True,
        "out": str(out),
        "utterances": len(annotated["transcripts"]),
        "engine": annotated["manifest"]["annotation"],
    }
    if unmapped:
        result["unmapped_pos"] = unmapped
    print(json.dumps(result))
    return 0


if __name__ == "__main__":
    sys.exit(main())
