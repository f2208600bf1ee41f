"""Command-line driver: score, rank, filter, and report over corpora.

Data goes to ``--output`` or standard output; summaries, warnings, and
diagnostics go to standard error, so pipelines compose. Every command is
deterministic: identical inputs and flags give byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter

from .corpus import Corpus, CorpusError, load_corpus, record_json, write_corpus
from .ranking import (
    METHODS,
    SEMANTIC_FIELDS,
    FilterSpec,
    ScoreCard,
    filter_corpus,
    score_corpus,
)
from .semantic import EmbeddingError, TestEmbedderProvider, load_embeddings

DEFAULT_SEED = 42


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rankaug",
        description="Rank and filter machine-generated paraphrases "
        "for data augmentation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, *, embeddings: bool = True) -> None:
        p.add_argument("--input", required=True, help="corpus JSONL file")
        p.add_argument("--output", help="output path (default: standard output)")
        if embeddings:
            p.add_argument("--embeddings", help="embedding JSONL file")
            p.add_argument(
                "--test-embedder-dim", type=int,
                help="use the deterministic test embedder at this dimension",
            )
            p.add_argument(
                "--seed", type=int, default=DEFAULT_SEED,
                help=f"test-embedder seed (default {DEFAULT_SEED})",
            )
            p.add_argument(
                "--no-stem", action="store_true",
                help="skip the stem-matching stage (non-English corpora)",
            )
            p.add_argument(
                "--semantic-field", choices=SEMANTIC_FIELDS, default="f1",
                help="alignment-score field used for the semantic rank",
            )
            p.add_argument(
                "--workers", type=int, default=1,
                help="threads for per-group scoring (output is identical "
                "for any value)",
            )

    p_score = sub.add_parser(
        "score", help="write one scorecard per candidate, all metrics populated"
    )
    common(p_score)

    p_rank = sub.add_parser(
        "rank", help="write one scorecard per candidate, ranks and fused rank only"
    )
    common(p_rank)

    p_filter = sub.add_parser(
        "filter", help="keep the top n candidates per group by one method"
    )
    common(p_filter)
    p_filter.add_argument("--method", required=True, choices=METHODS)
    p_filter.add_argument("--n", required=True, type=int, help="candidates kept per group")
    p_filter.add_argument(
        "--direction-override", choices=("higher", "lower"),
        help="force which end of a baseline metric is kept",
    )

    p_report = sub.add_parser(
        "report", help="per-class record counts; with two inputs, before/after"
    )
    p_report.add_argument(
        "--input", required=True, nargs="+",
        help="one corpus, or an unfiltered and a filtered corpus",
    )
    p_report.add_argument("--output", help="output path (default: standard output)")
    return parser


def _provider(args: argparse.Namespace, parser: argparse.ArgumentParser):
    table = args.embeddings is not None
    test = args.test_embedder_dim is not None
    if table and test:
        parser.error("--embeddings and --test-embedder-dim are mutually exclusive")
    if table:
        return load_embeddings(args.embeddings)
    if test:
        return TestEmbedderProvider(args.test_embedder_dim, args.seed)
    return None


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8") as handle:
            handle.write(text)


def _card_obj(card: ScoreCard, original_id: str) -> dict:
    obj = {
        "id": card.candidate_id,
        "original_id": original_id,
        "semantic_score": card.semantic_score,
        "diversity_score": card.diversity_score,
        "semantic_rank": card.semantic_rank,
        "diversity_rank": card.diversity_rank,
        "fused_rank": card.fused_rank,
    }
    if card.baseline_scores:
        obj["baselines"] = {
            name: card.baseline_scores[name].value
            for name in sorted(card.baseline_scores)
        }
    return obj


def _cmd_cards(args, parser, with_baselines: bool) -> int:
    provider = _provider(args, parser)
    if provider is None:
        parser.error("scoring needs --embeddings or --test-embedder-dim")
    corpus = load_corpus(args.input)
    per_group = score_corpus(
        corpus,
        provider,
        use_stem=not args.no_stem,
        semantic_field=args.semantic_field,
        workers=args.workers,
        with_baselines=with_baselines,
    )
    lines = []
    for group, cards in zip(corpus.groups, per_group):
        for card in cards:
            lines.append(json.dumps(_card_obj(card, group.original.id), ensure_ascii=False))
    _emit("".join(line + "\n" for line in lines), args.output)
    print(
        f"scored {len(lines)} candidates in {len(corpus.groups)} groups",
        file=sys.stderr,
    )
    return 0


def _label_counts(corpus: Corpus) -> Counter:
    return Counter(record.label for record in corpus.iter_records())


def _cmd_filter(args, parser) -> int:
    if args.n < 1:
        parser.error("--n must be >= 1")
    spec = FilterSpec(args.method, args.n, args.direction_override)
    provider = _provider(args, parser)
    if spec.method in ("rankaug", "bertscore") and provider is None:
        parser.error(
            f"method {spec.method!r} needs --embeddings or --test-embedder-dim"
        )
    corpus = load_corpus(args.input)
    result = filter_corpus(
        corpus,
        spec,
        provider,
        use_stem=not args.no_stem,
        semantic_field=args.semantic_field,
        workers=args.workers,
    )
    if args.output is None:
        for record in result.iter_records():
            sys.stdout.write(record_json(record) + "\n")
    else:
        write_corpus(result, args.output)
    before, after = _label_counts(corpus), _label_counts(result)
    print(
        f"filtered {len(corpus.groups)} groups with {spec.method} n={spec.n}",
        file=sys.stderr,
    )
    for label in sorted(before):
        print(f"  {label}: {before[label]} -> {after[label]}", file=sys.stderr)
    print(f"  total: {len(corpus)} -> {len(result)}", file=sys.stderr)
    return 0


def _originals(corpus: Corpus) -> int:
    return len(corpus.groups) + len(corpus.ungrouped)


def _cmd_report(args, parser) -> int:
    if len(args.input) > 2:
        parser.error("report takes one or two --input paths")
    corpora = [load_corpus(path) for path in args.input]
    before = corpora[0]
    before_counts = _label_counts(before)
    lines = []
    if len(corpora) == 1:
        lines.append("label records")
        for label in sorted(before_counts):
            lines.append(f"{label} {before_counts[label]}")
        lines.append(
            f"total: {len(before_counts)} classes, {_originals(before)}, {len(before)}"
        )
    else:
        after = corpora[1]
        after_counts = _label_counts(after)
        before_ids = {g.original.id for g in before.groups}
        after_ids = {g.original.id for g in after.groups}
        unmatched = sorted(before_ids ^ after_ids)
        if unmatched:
            print(
                "warning: groups present in only one corpus: "
                + ", ".join(unmatched),
                file=sys.stderr,
            )
        lines.append("label before after")
        for label in sorted(set(before_counts) | set(after_counts)):
            lines.append(
                f"{label} {before_counts[label]} {after_counts[label]}"
            )
        lines.append(
            f"total: {len(before_counts)} classes, {_originals(before)}, "
            f"{len(before)}, {len(after)}"
        )
    _emit("".join(line + "\n" for line in lines), args.output)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command in ("score", "rank"):
            return _cmd_cards(args, parser, with_baselines=args.command == "score")
        if args.command == "filter":
            return _cmd_filter(args, parser)
        return _cmd_report(args, parser)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 0 if code is None else 2
    except (CorpusError, EmbeddingError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
