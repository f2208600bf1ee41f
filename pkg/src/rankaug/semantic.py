"""Embedding-based similarity: embedding-file ingestion, cosine, and
greedy token-alignment scoring.

Embeddings are produced out of process and consumed from a JSONL file,
one object per corpus record: ``{"id": str, "dim": int, "tokens":
[str...], "vectors": [[num...]...]}``. The deterministic hash-based
:func:`test_embedder` stands in for a real encoder at test scale.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

import numpy as np

from .text import TokenSeq, tokenize


class EmbeddingError(ValueError):
    """An embedding file or lookup violated the format or its rules."""


def _reject_constant(name: str):
    raise ValueError(f"non-finite number {name}")


@dataclass(eq=False)
class TokenEmbeddings:
    """One record's tokens and their vectors, one row per token."""

    record_id: str
    tokens: list[str]
    vectors: np.ndarray

    def __post_init__(self) -> None:
        self.vectors = np.asarray(self.vectors, dtype=float)
        if self.vectors.ndim != 2:
            raise EmbeddingError(
                f"record {self.record_id!r}: vectors must be a 2-d array"
            )
        if len(self.tokens) != self.vectors.shape[0]:
            raise EmbeddingError(
                f"record {self.record_id!r}: {len(self.tokens)} tokens but "
                f"{self.vectors.shape[0]} vectors"
            )
        if not self.tokens:
            raise EmbeddingError(f"record {self.record_id!r}: no tokens")
        if not np.isfinite(self.vectors).all():
            raise EmbeddingError(f"record {self.record_id!r}: non-finite vector value")
        if (np.linalg.norm(self.vectors, axis=1) == 0).any():
            raise EmbeddingError(f"record {self.record_id!r}: all-zero vector")

    @property
    def dimension(self) -> int:
        return self.vectors.shape[1]


@dataclass
class EmbeddingTable:
    """Validated map from record id to its token embeddings, all of one
    dimension."""

    dimension: int
    entries: dict[str, TokenEmbeddings] = field(default_factory=dict)

    def for_record(self, record_id: str) -> TokenEmbeddings:
        try:
            return self.entries[record_id]
        except KeyError:
            raise EmbeddingError(
                f"no embedding for record {record_id!r}"
            ) from None

    def embeddings_for(self, record) -> TokenEmbeddings:
        """Provider hook used by corpus filtering; *record* is a corpus
        Record."""
        return self.for_record(record.id)


@dataclass(frozen=True)
class BertScoreResult:
    precision: float
    recall: float
    f1: float


_EMB_FIELDS = ("id", "dim", "tokens", "vectors")


def load_embeddings(path) -> EmbeddingTable:
    """Load a JSONL embedding file, enforcing uniform dimension, matching
    token/vector counts, unique ids, and finite non-zero vectors."""
    entries: dict[str, TokenEmbeddings] = {}
    dimension: int | None = None
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, 1):
            if not line.strip():
                raise EmbeddingError(f"line {lineno}: blank line")
            try:
                obj = json.loads(line, parse_constant=_reject_constant)
            except ValueError as exc:
                raise EmbeddingError(f"line {lineno}: unparseable: {exc}") from None
            if not isinstance(obj, dict):
                raise EmbeddingError(f"line {lineno}: expected an object")
            missing = [f for f in _EMB_FIELDS if f not in obj]
            if missing:
                raise EmbeddingError(
                    f"line {lineno}: missing field(s) {', '.join(missing)}"
                )
            unknown = sorted(set(obj) - set(_EMB_FIELDS))
            if unknown:
                raise EmbeddingError(
                    f"line {lineno}: unknown field(s) {', '.join(unknown)}"
                )
            rec_id, dim, tokens, vectors = (obj[f] for f in _EMB_FIELDS)
            if not isinstance(rec_id, str) or not rec_id:
                raise EmbeddingError(f"line {lineno}: 'id' must be a non-empty string")
            if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
                raise EmbeddingError(f"line {lineno}: 'dim' must be a positive integer")
            if rec_id in entries:
                raise EmbeddingError(f"line {lineno}: duplicate record id {rec_id!r}")
            if not isinstance(tokens, list) or not all(
                isinstance(t, str) and t for t in tokens
            ):
                raise EmbeddingError(
                    f"record {rec_id!r}: 'tokens' must be non-empty strings"
                )
            if not isinstance(vectors, list) or any(
                not isinstance(v, list) or len(v) != dim for v in vectors
            ):
                raise EmbeddingError(
                    f"record {rec_id!r}: every vector must have length dim={dim}"
                )
            if dimension is None:
                dimension = dim
            elif dim != dimension:
                raise EmbeddingError(
                    f"record {rec_id!r}: dimension {dim} differs from {dimension}"
                )
            try:
                entries[rec_id] = TokenEmbeddings(rec_id, tokens, vectors)
            except EmbeddingError:
                raise
            except (TypeError, ValueError):
                raise EmbeddingError(
                    f"record {rec_id!r}: vectors must be rectangular numeric lists"
                ) from None
    return EmbeddingTable(dimension if dimension is not None else 0, entries)


def cosine(u, v) -> float:
    """Cosine similarity of two equal-dimension non-zero vectors."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != v.shape:
        raise ValueError(f"dimension mismatch: {u.shape} vs {v.shape}")
    nu = np.linalg.norm(u)
    nv = np.linalg.norm(v)
    if nu == 0 or nv == 0:
        raise ValueError("cosine undefined for zero vectors")
    if np.array_equal(u, v):
        return 1.0
    return float(np.clip(u @ v / (nu * nv), -1.0, 1.0))


def bertscore(candidate: TokenEmbeddings, reference: TokenEmbeddings) -> BertScoreResult:
    """Greedy alignment score: each token is matched to its maximum-cosine
    counterpart on the other side.

    Precision averages the per-candidate-token maxima, recall the
    per-reference-token maxima; no IDF weighting or baseline rescaling is
    applied. Token order plays no part, by construction.
    """
    if candidate.dimension != reference.dimension:
        raise ValueError(
            f"dimension mismatch: {candidate.dimension} vs {reference.dimension}"
        )
    cand = candidate.vectors / np.linalg.norm(candidate.vectors, axis=1, keepdims=True)
    ref = reference.vectors / np.linalg.norm(reference.vectors, axis=1, keepdims=True)
    sim = np.clip(cand @ ref.T, -1.0, 1.0)
    precision = float(sim.max(axis=1).mean())
    recall = float(sim.max(axis=0).mean())
    denom = precision + recall
    f1 = 2 * precision * recall / denom if denom != 0 else 0.0
    return BertScoreResult(precision, recall, f1)


def test_embedder(
    seq: TokenSeq, dimension: int, seed: int, *, record_id: str = ""
) -> TokenEmbeddings:
    """Deterministic stand-in encoder: a unit vector per token derived by
    hashing (seed, position, token).

    Equal tokens at different positions get different vectors, mimicking
    contextual encoders; identical inputs give bit-identical output on
    every platform.
    """
    if dimension < 2:
        raise ValueError("dimension must be >= 2")
    rows = np.empty((len(seq), dimension), dtype=float)
    for position, token in enumerate(seq):
        material = f"{seed}|{position}|{token}".encode("utf-8")
        blocks = []
        counter = 0
        while len(blocks) * 4 < dimension:
            digest = hashlib.sha256(material + b"|" + str(counter).encode()).digest()
            blocks.append(np.frombuffer(digest, dtype=">u8"))
            counter += 1
        words = np.concatenate(blocks)[:dimension]
        vec = 2.0 * (words / 2.0**64) - 1.0
        norm = np.linalg.norm(vec)
        if norm == 0:
            raise ValueError(f"degenerate hash vector for token {token!r}")
        rows[position] = vec / norm
    return TokenEmbeddings(record_id, list(seq), rows)


@dataclass(frozen=True)
class TestEmbedderProvider:
    """Provider that embeds records on the fly with the test embedder."""

    dimension: int
    seed: int

    def embeddings_for(self, record) -> TokenEmbeddings:
        return test_embedder(
            tokenize(record.text), self.dimension, self.seed, record_id=record.id
        )
