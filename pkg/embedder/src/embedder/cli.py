"""Command-line driver: embed a corpus file into an embedding file."""

from __future__ import annotations

import argparse
import sys

from .encode import EmbedError, EmbedJob, embed_corpus


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="embedder",
        description="Export contextual token embeddings for a corpus, one "
        "JSONL line per record, in the format the ranking package reads.",
    )
    parser.add_argument("--input", required=True, help="corpus JSONL file")
    parser.add_argument("--output", required=True, help="embedding JSONL file")
    parser.add_argument(
        "--model", default="bert-base-uncased",
        help="encoder id or local path (default bert-base-uncased)",
    )
    parser.add_argument(
        "--layer", type=int, default=-1,
        help="hidden-state layer to export; 0 is the embedding output, "
        "-1 the final layer (default -1)",
    )
    parser.add_argument(
        "--max-tokens", type=int, default=512,
        help="cap on subword tokens per text, longer texts are truncated "
        "with a warning (default 512)",
    )
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.max_tokens < 1:
            parser.error("--max-tokens must be >= 1")
        job = EmbedJob(
            corpus_path=args.input,
            output_path=args.output,
            model_id=args.model,
            layer=args.layer,
            max_tokens=args.max_tokens,
        )
        count = embed_corpus(job)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 0 if code is None else 2
    except (EmbedError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(
        f"embedded {count} records with {args.model} layer {args.layer}",
        file=sys.stderr,
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
