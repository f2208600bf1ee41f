"""Rank and filter machine-generated paraphrases for data augmentation.

Candidates are scored per paraphrase group on two axes: semantic
fidelity to the original (greedy token-embedding alignment) and
diversity (mean normalized word-level edit distance to the original and
to the sibling candidates). The two scores become 1-based ranks, fused
by harmonic mean, and the best n candidates per group are kept. Five
classic single-metric filters (BLEU, ROUGE-L, METEOR, edit distance,
embedding alignment alone) are included for comparison.
"""

from .corpus import (
    Corpus,
    CorpusError,
    ParaphraseGroup,
    Record,
    load_corpus,
    record_json,
    write_corpus,
)
from .lexical import (
    METRIC_DIRECTIONS,
    MetricValue,
    bleu,
    lev_char,
    lev_word,
    lev_word_norm,
    meteor,
    rouge_l,
)
from .ranking import (
    METHODS,
    SEMANTIC_FIELDS,
    FilterSpec,
    ScoreCard,
    baseline_filter,
    filter_corpus,
    fuse_ranks,
    rank_diversity,
    rank_group,
    rank_semantic,
    score_corpus,
    score_group,
    select_top_n,
    self_ld,
    self_ld_scores,
)
from .semantic import (
    BertScoreResult,
    EmbeddingError,
    EmbeddingTable,
    TestEmbedderProvider,
    TokenEmbeddings,
    bertscore,
    cosine,
    load_embeddings,
    test_embedder,
)
from .text import ngrams, stem, tokenize

__version__ = "0.1.0"

__all__ = [
    "BertScoreResult",
    "Corpus",
    "CorpusError",
    "EmbeddingError",
    "EmbeddingTable",
    "FilterSpec",
    "METHODS",
    "METRIC_DIRECTIONS",
    "MetricValue",
    "ParaphraseGroup",
    "Record",
    "SEMANTIC_FIELDS",
    "ScoreCard",
    "TestEmbedderProvider",
    "TokenEmbeddings",
    "baseline_filter",
    "bertscore",
    "bleu",
    "cosine",
    "filter_corpus",
    "fuse_ranks",
    "lev_char",
    "lev_word",
    "lev_word_norm",
    "load_corpus",
    "load_embeddings",
    "meteor",
    "ngrams",
    "rank_diversity",
    "rank_group",
    "rank_semantic",
    "record_json",
    "rouge_l",
    "score_corpus",
    "score_group",
    "select_top_n",
    "self_ld",
    "self_ld_scores",
    "stem",
    "test_embedder",
    "tokenize",
    "write_corpus",
    "__version__",
]
