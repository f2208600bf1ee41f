"""Corpus reading, encoder loading, and the embedding export itself."""

from __future__ import annotations

import json
import os
import sys
import tempfile
from dataclasses import dataclass
from typing import Any


class EmbedError(Exception):
    """Raised for unreadable corpora, invalid jobs, or encoder failures."""


@dataclass(frozen=True)
class EmbedJob:
    """Everything one export run needs.

    The layer index addresses the encoder's hidden states the way Python
    addresses a list: 0 is the embedding layer's output, the last index
    (or -1) is the final encoder layer.
    """

    corpus_path: str
    output_path: str
    model_id: str = "bert-base-uncased"
    layer: int = -1
    max_tokens: int = 512

    def __post_init__(self) -> None:
        if self.max_tokens < 1:
            raise EmbedError("max_tokens must be >= 1")


def read_corpus(path: str) -> list[tuple[str, str]]:
    """Return (id, text) pairs in file order.

    Only the fields the export needs are validated here; the ranking
    package owns the full corpus contract.
    """
    pairs: list[tuple[str, str]] = []
    seen: dict[str, int] = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line:
                raise EmbedError(f"line {lineno}: blank line")
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise EmbedError(f"line {lineno}: invalid record: {exc}") from None
            if not isinstance(obj, dict):
                raise EmbedError(f"line {lineno}: expected an object")
            rec_id = obj.get("id")
            text = obj.get("text")
            if not isinstance(rec_id, str) or not rec_id:
                raise EmbedError(f"line {lineno}: 'id' must be a non-empty string")
            if not isinstance(text, str) or not text:
                raise EmbedError(f"line {lineno}: 'text' must be a non-empty string")
            if rec_id in seen:
                raise EmbedError(
                    f"duplicate id {rec_id!r} on lines {seen[rec_id]} and {lineno}"
                )
            seen[rec_id] = lineno
            pairs.append((rec_id, text))
    return pairs


def _load_encoder(model_id: str) -> tuple[Any, Any]:
    from transformers import AutoModel, AutoTokenizer

    try:
        tokenizer = AutoTokenizer.from_pretrained(model_id)
        model = AutoModel.from_pretrained(model_id)
    except Exception as exc:
        raise EmbedError(f"cannot load model {model_id!r}: {exc}") from None
    model.eval()
    return tokenizer, model


def _check_layer(layer: int, model: Any, model_id: str) -> None:
    # hidden_states holds the embedding output plus one entry per layer
    count = model.config.num_hidden_layers + 1
    if not -count <= layer < count:
        raise EmbedError(
            f"layer {layer} out of range: model {model_id!r} exposes "
            f"hidden states 0..{count - 1} (negatives count from the end)"
        )


def _sentinel_count(tokenizer: Any) -> int:
    # how many sentinel tokens the single-sequence template adds
    probe = tokenizer("a", add_special_tokens=True, return_special_tokens_mask=True)
    return sum(probe["special_tokens_mask"])


def _embed_text(
    rec_id: str, text: str, tokenizer: Any, model: Any, layer: int, max_tokens: int,
    sentinels: int, torch: Any,
) -> tuple[list[str], list[list[float]], bool]:
    content = tokenizer(text, add_special_tokens=False)["input_ids"]
    if not content:
        raise EmbedError(f"record {rec_id!r}: text produced no tokens")
    truncated = len(content) > max_tokens
    full = tokenizer(
        text,
        add_special_tokens=True,
        truncation=True,
        max_length=max_tokens + sentinels,
        return_special_tokens_mask=True,
    )
    input_ids = full["input_ids"]
    keep = [
        pos for pos, flag in enumerate(full["special_tokens_mask"]) if flag == 0
    ]
    with torch.no_grad():
        output = model(
            input_ids=torch.tensor([input_ids]),
            attention_mask=torch.tensor([full["attention_mask"]]),
            output_hidden_states=True,
        )
    states = output.hidden_states[layer][0]
    vectors = states[keep].tolist()
    tokens = tokenizer.convert_ids_to_tokens([input_ids[pos] for pos in keep])
    return tokens, vectors, truncated


def embed_corpus(job: EmbedJob) -> int:
    """Write one embedding line per corpus record; return the line count.

    The output file appears atomically (temp file in the target directory,
    then rename), so readers never see a half-written export. Truncation
    warnings go to standard error.
    """
    import torch

    pairs = read_corpus(job.corpus_path)
    tokenizer, model = _load_encoder(job.model_id)
    _check_layer(job.layer, model, job.model_id)
    dim = model.config.hidden_size
    sentinels = _sentinel_count(tokenizer)

    out_dir = os.path.dirname(os.path.abspath(job.output_path)) or "."
    fd, tmp_path = tempfile.mkstemp(dir=out_dir, prefix=".embed-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            for rec_id, text in pairs:
                tokens, vectors, truncated = _embed_text(
                    rec_id, text, tokenizer, model, job.layer, job.max_tokens,
                    sentinels, torch,
                )
                if truncated:
                    print(
                        f"warning: record {rec_id!r}: truncated to "
                        f"{job.max_tokens} tokens",
                        file=sys.stderr,
                    )
                handle.write(
                    json.dumps(
                        {"id": rec_id, "dim": dim, "tokens": tokens, "vectors": vectors},
                        ensure_ascii=False,
                    )
                    + "\n"
                )
        os.replace(tmp_path, job.output_path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)
        raise
    return len(pairs)
