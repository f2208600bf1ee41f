"""Candidate ranking and corpus filtering.

Per paraphrase group, every candidate gets a semantic score (greedy
embedding alignment against its original) and a diversity score (mean
normalized word-level edit distance to the original and to the other
candidates). Both scores become 1-based ranks, the ranks are fused by
harmonic mean, and the top n candidates per group survive. Five
single-metric baseline filters are provided for comparison.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .corpus import Corpus, ParaphraseGroup, Record
from .lexical import (
    METRIC_DIRECTIONS,
    MetricValue,
    bleu,
    lev_char,
    lev_word_norm,
    meteor,
    rouge_l,
)
from .semantic import bertscore
from .text import tokenize

METHODS = ("rankaug", "bleu", "bertscore", "levenshtein", "rouge", "meteor")

SEMANTIC_FIELDS = ("precision", "recall", "f1")

#: metric computed by each baseline method, at the default word level
_METHOD_METRIC = {
    "bleu": "bleu",
    "bertscore": "bertscore_f1",
    "levenshtein": "lev_word_norm",
    "rouge": "rouge_l",
    "meteor": "meteor",
}


@dataclass(frozen=True)
class ScoreCard:
    """All per-candidate scores: the two ranking criteria, their ranks,
    the fused rank, and the baseline metrics against the original."""

    candidate_id: str
    semantic_score: float
    diversity_score: float
    semantic_rank: int
    diversity_rank: int
    fused_rank: float
    baseline_scores: dict[str, MetricValue] = field(default_factory=dict)


@dataclass(frozen=True)
class FilterSpec:
    """Which filtering method to run and how many candidates to keep."""

    method: str
    n: int
    direction_override: str | None = None

    def __post_init__(self) -> None:
        if self.method not in METHODS:
            raise ValueError(
                f"unknown method {self.method!r}; expected one of {', '.join(METHODS)}"
            )
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.direction_override not in (None, "higher", "lower"):
            raise ValueError("direction override must be 'higher' or 'lower'")


def self_ld_scores(group: ParaphraseGroup) -> list[float]:
    """Diversity score of every candidate in one pass.

    Each candidate's score is the mean normalized word-level edit
    distance to the original and to every other candidate; pair
    distances are computed once and reused across candidates.
    """
    original = tokenize(group.original.text)
    toks = [tokenize(c.text) for c in group.candidates]
    k = len(toks)
    to_original = [lev_word_norm(t, original) for t in toks]
    row_sum = [0.0] * k
    for i in range(k):
        for j in range(i + 1, k):
            d = lev_word_norm(toks[i], toks[j])
            row_sum[i] += d
            row_sum[j] += d
    # k comparison texts per candidate: the original plus the k-1 others
    return [(to_original[i] + row_sum[i]) / k for i in range(k)]


def self_ld(group: ParaphraseGroup, index: int) -> float:
    """Diversity score of the candidate at *index* (0-based) in *group*."""
    if not 0 <= index < len(group.candidates):
        raise IndexError(
            f"candidate index {index} out of range for group of "
            f"{len(group.candidates)}"
        )
    return self_ld_scores(group)[index]


def _rank_descending(scores: list[float]) -> list[int]:
    for value in scores:
        if not math.isfinite(value):
            raise ValueError(f"non-finite score {value!r}")
    order = sorted(range(len(scores)), key=lambda i: (-scores[i], i))
    ranks = [0] * len(scores)
    for position, i in enumerate(order, 1):
        ranks[i] = position
    return ranks


def rank_semantic(scores: list[float]) -> list[int]:
    """1-based ranks, rank 1 = highest semantic score; ties go to the
    earlier candidate."""
    return _rank_descending(scores)


def rank_diversity(scores: list[float]) -> list[int]:
    """1-based ranks, rank 1 = most diverse; ties go to the earlier
    candidate."""
    return _rank_descending(scores)


def fuse_ranks(semantic_rank: int, diversity_rank: int) -> float:
    """Harmonic mean of the two rank positions; lower is better."""
    if semantic_rank < 1 or diversity_rank < 1:
        raise ValueError("ranks are 1-based; got "
                         f"({semantic_rank}, {diversity_rank})")
    return 2 * semantic_rank * diversity_rank / (semantic_rank + diversity_rank)


def _semantic_scores(group: ParaphraseGroup, provider, semantic_field: str):
    """Per-candidate alignment scores against the original, plus the full
    result objects (whose F1 the baseline map wants regardless of field)."""
    if semantic_field not in SEMANTIC_FIELDS:
        raise ValueError(f"semantic field must be one of {', '.join(SEMANTIC_FIELDS)}")
    if provider is None:
        raise ValueError("semantic scoring needs an embedding provider")
    orig_emb = provider.embeddings_for(group.original)
    results = [bertscore(provider.embeddings_for(c), orig_emb) for c in group.candidates]
    return [getattr(r, semantic_field) for r in results], results


def _assemble_cards(
    group: ParaphraseGroup,
    semantic_scores: list[float],
    baselines: list[dict[str, MetricValue]] | None = None,
) -> list[ScoreCard]:
    diversity_scores = self_ld_scores(group)
    sem_ranks = rank_semantic(semantic_scores)
    div_ranks = rank_diversity(diversity_scores)
    return [
        ScoreCard(
            candidate_id=cand.id,
            semantic_score=semantic_scores[i],
            diversity_score=diversity_scores[i],
            semantic_rank=sem_ranks[i],
            diversity_rank=div_ranks[i],
            fused_rank=fuse_ranks(sem_ranks[i], div_ranks[i]),
            baseline_scores=baselines[i] if baselines is not None else {},
        )
        for i, cand in enumerate(group.candidates)
    ]


def rank_group(
    group: ParaphraseGroup,
    provider,
    *,
    semantic_field: str = "f1",
) -> list[ScoreCard]:
    """Scorecards carrying only what rank fusion needs (no baseline
    metrics); the cheap path used by corpus filtering."""
    scores, _ = _semantic_scores(group, provider, semantic_field)
    return _assemble_cards(group, scores)


def score_group(
    group: ParaphraseGroup,
    provider,
    *,
    use_stem: bool = True,
    semantic_field: str = "f1",
    exact_cutoff: int = 20,
) -> list[ScoreCard]:
    """Score every candidate of one group against its original.

    *provider* supplies token embeddings per record (an EmbeddingTable or
    a test-embedder provider). The returned scorecards carry the fused
    rank plus every baseline metric.
    """
    scores, results = _semantic_scores(group, provider, semantic_field)
    original = group.original
    orig_toks = tokenize(original.text)
    baselines = []
    for cand, result in zip(group.candidates, results):
        cand_toks = tokenize(cand.text)
        values = {
            "bleu": bleu(cand_toks, orig_toks),
            "lev_char": lev_char(cand.text, original.text),
            "lev_word_norm": lev_word_norm(cand_toks, orig_toks),
            "rouge_l": rouge_l(cand_toks, orig_toks),
            "meteor": meteor(
                cand_toks, orig_toks, use_stem=use_stem, exact_cutoff=exact_cutoff
            ),
            "bertscore_f1": result.f1,
        }
        baselines.append({m: MetricValue.of(m, v) for m, v in values.items()})
    return _assemble_cards(group, scores, baselines)


def select_top_n(
    group: ParaphraseGroup, scorecards: list[ScoreCard], n: int
) -> list[Record]:
    """The min(n, k) best candidates by fused rank, best first.

    Ties on the fused rank go to the better semantic rank, then to the
    earlier candidate.
    """
    if len(scorecards) != len(group.candidates):
        raise ValueError(
            f"{len(scorecards)} scorecards for {len(group.candidates)} candidates"
        )
    order = sorted(
        range(len(scorecards)),
        key=lambda i: (scorecards[i].fused_rank, scorecards[i].semantic_rank, i),
    )
    return [group.candidates[i] for i in order[: min(n, len(order))]]


def baseline_filter(
    group: ParaphraseGroup,
    metric: str,
    n: int,
    reference: str = "original",
    *,
    provider=None,
    use_stem: bool = True,
    exact_cutoff: int = 20,
    lev_level: str = "word",
    direction_override: str | None = None,
) -> list[Record]:
    """Keep the min(n, k) candidates scoring best on one metric against
    the group's original.

    Similarity metrics keep the highest scores; the edit-distance metric
    keeps the lowest. *direction_override* ('higher' or 'lower') forces
    the sort direction; *lev_level* switches the edit distance between
    'word' (normalized) and 'char'.
    """
    if metric not in _METHOD_METRIC:
        raise ValueError(
            f"unknown baseline metric {metric!r}; expected one of "
            f"{', '.join(_METHOD_METRIC)}"
        )
    if reference != "original":
        raise ValueError("only reference='original' is supported")
    if lev_level not in ("word", "char"):
        raise ValueError("lev_level must be 'word' or 'char'")

    original = group.original
    orig_toks = tokenize(original.text)
    if metric == "bertscore":
        if provider is None:
            raise ValueError("bertscore filtering needs an embedding provider")
        orig_emb = provider.embeddings_for(original)

    metric_name = _METHOD_METRIC[metric]
    if metric == "levenshtein" and lev_level == "char":
        metric_name = "lev_char"

    def value(cand: Record) -> float:
        if metric == "bleu":
            return bleu(tokenize(cand.text), orig_toks)
        if metric == "rouge":
            return rouge_l(tokenize(cand.text), orig_toks)
        if metric == "meteor":
            return meteor(
                tokenize(cand.text), orig_toks,
                use_stem=use_stem, exact_cutoff=exact_cutoff,
            )
        if metric == "bertscore":
            return bertscore(provider.embeddings_for(cand), orig_emb).f1
        if lev_level == "char":
            return float(lev_char(cand.text, original.text))
        return lev_word_norm(tokenize(cand.text), orig_toks)

    scores = [value(c) for c in group.candidates]
    if direction_override is not None:
        descending = direction_override == "higher"
    else:
        descending = METRIC_DIRECTIONS[metric_name] == "higher_better"
    sign = -1.0 if descending else 1.0
    order = sorted(range(len(scores)), key=lambda i: (sign * scores[i], i))
    return [group.candidates[i] for i in order[: min(n, len(order))]]


def _map_groups(fn, groups, workers: int) -> list:
    if workers < 1:
        raise ValueError("workers must be >= 1")
    if workers == 1:
        return [fn(g) for g in groups]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, groups))


def score_corpus(
    corpus: Corpus,
    provider=None,
    *,
    use_stem: bool = True,
    semantic_field: str = "f1",
    exact_cutoff: int = 20,
    workers: int = 1,
    with_baselines: bool = True,
) -> list[list[ScoreCard]]:
    """Scorecards for every group of a corpus, aligned with
    ``corpus.groups``; ungrouped originals have no cards.

    With *with_baselines* false, only the rank-fusion fields are
    computed, which skips the baseline metrics entirely.
    """
    if with_baselines:
        def run_one(group: ParaphraseGroup) -> list[ScoreCard]:
            return score_group(
                group,
                provider,
                use_stem=use_stem,
                semantic_field=semantic_field,
                exact_cutoff=exact_cutoff,
            )
    else:
        def run_one(group: ParaphraseGroup) -> list[ScoreCard]:
            return rank_group(group, provider, semantic_field=semantic_field)
    return _map_groups(run_one, corpus.groups, workers)


def filter_corpus(
    corpus: Corpus,
    spec: FilterSpec,
    provider=None,
    *,
    use_stem: bool = True,
    semantic_field: str = "f1",
    exact_cutoff: int = 20,
    workers: int = 1,
) -> Corpus:
    """Apply one filtering method to every group of a corpus.

    Every original survives; each group keeps its min(n, k) selected
    candidates; ungrouped originals pass through untouched. Groups are
    independent, so they may be scored on *workers* threads; the output
    assembles in input-group order and is identical for any worker
    count.
    """
    if spec.method == "rankaug" and spec.direction_override is not None:
        raise ValueError("direction override applies only to baseline methods")

    def run_one(group: ParaphraseGroup) -> ParaphraseGroup:
        if spec.method == "rankaug":
            cards = rank_group(group, provider, semantic_field=semantic_field)
            kept = select_top_n(group, cards, spec.n)
        else:
            kept = baseline_filter(
                group,
                spec.method,
                spec.n,
                provider=provider,
                use_stem=use_stem,
                exact_cutoff=exact_cutoff,
                direction_override=spec.direction_override,
            )
        return ParaphraseGroup(group.original, tuple(kept))

    return Corpus(tuple(_map_groups(run_one, corpus.groups, workers)), corpus.ungrouped)
