"""Read, validate, group, and write paraphrase corpora.

A corpus is a UTF-8 JSONL file, one record per line, with exactly the
fields ``id``, ``text``, ``label``, and ``source_id``. Originals carry
``source_id: null``; machine-generated candidates point at their
original's id. Loading groups candidates under their originals while
preserving file order, which downstream ranking uses for tie-breaking.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterator


class CorpusError(ValueError):
    """A corpus file violated the format or its referential rules."""


_FIELDS = ("id", "text", "label", "source_id")


@dataclass(frozen=True)
class Record:
    """One utterance: an original sentence or a generated candidate."""

    id: str
    text: str
    label: str
    source_id: str | None = None

    @property
    def is_original(self) -> bool:
        return self.source_id is None


@dataclass(frozen=True)
class ParaphraseGroup:
    """An original record together with its candidate paraphrases, in
    input order."""

    original: Record
    candidates: tuple[Record, ...]

    def __post_init__(self) -> None:
        for cand in self.candidates:
            if cand.source_id != self.original.id:
                raise CorpusError(
                    f"candidate {cand.id!r} does not reference original "
                    f"{self.original.id!r}"
                )


@dataclass(frozen=True)
class Corpus:
    """All groups plus the originals that have no candidates."""

    groups: tuple[ParaphraseGroup, ...] = ()
    ungrouped: tuple[Record, ...] = ()

    def __len__(self) -> int:
        return sum(1 + len(g.candidates) for g in self.groups) + len(self.ungrouped)

    def iter_records(self) -> Iterator[Record]:
        """Records in canonical order: each group's original then its
        candidates, then the ungrouped originals."""
        for group in self.groups:
            yield group.original
            yield from group.candidates
        yield from self.ungrouped


def _parse_record(line: str, lineno: int) -> Record:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise CorpusError(f"line {lineno}: invalid record: {exc}") from None
    if not isinstance(obj, dict):
        raise CorpusError(f"line {lineno}: expected an object, got {type(obj).__name__}")
    missing = [f for f in _FIELDS if f not in obj]
    if missing:
        raise CorpusError(f"line {lineno}: missing field(s) {', '.join(missing)}")
    unknown = sorted(set(obj) - set(_FIELDS))
    if unknown:
        raise CorpusError(f"line {lineno}: unknown field(s) {', '.join(unknown)}")
    for field in ("id", "text", "label"):
        if not isinstance(obj[field], str):
            raise CorpusError(f"line {lineno}: field {field!r} must be a string")
    source_id = obj["source_id"]
    if source_id is not None and not isinstance(source_id, str):
        raise CorpusError(f"line {lineno}: field 'source_id' must be a string or null")
    if not obj["id"]:
        raise CorpusError(f"line {lineno}: empty id")
    if not obj["text"].strip():
        raise CorpusError(f"line {lineno}: empty text")
    return Record(obj["id"], obj["text"], obj["label"], source_id)


def load_corpus(path) -> Corpus:
    """Load and validate a JSONL corpus file.

    Candidates may appear before their original; grouping is resolved
    after the whole file is read. Raises :class:`CorpusError` with the
    offending line number(s) on malformed lines, duplicate ids, dangling
    references, and candidates that reference another candidate.
    """
    records: list[Record] = []
    line_of: dict[str, int] = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, 1):
            if not line.strip():
                raise CorpusError(f"line {lineno}: blank line")
            record = _parse_record(line, lineno)
            if record.id in line_of:
                raise CorpusError(
                    f"duplicate id {record.id!r} on lines "
                    f"{line_of[record.id]} and {lineno}"
                )
            line_of[record.id] = lineno
            records.append(record)

    by_id = {r.id: r for r in records}
    for record in records:
        if record.source_id is None:
            continue
        source = by_id.get(record.source_id)
        if source is None:
            raise CorpusError(
                f"line {line_of[record.id]}: candidate {record.id!r} references "
                f"unknown id {record.source_id!r}"
            )
        if source.source_id is not None:
            raise CorpusError(
                f"line {line_of[record.id]}: candidate {record.id!r} references "
                f"{record.source_id!r}, which is itself a candidate"
            )

    candidates_of: dict[str, list[Record]] = {}
    for record in records:
        if record.source_id is not None:
            candidates_of.setdefault(record.source_id, []).append(record)

    groups: list[ParaphraseGroup] = []
    ungrouped: list[Record] = []
    for record in records:
        if not record.is_original:
            continue
        cands = candidates_of.get(record.id)
        if cands:
            groups.append(ParaphraseGroup(record, tuple(cands)))
        else:
            ungrouped.append(record)
    return Corpus(tuple(groups), tuple(ungrouped))


def record_json(record: Record) -> str:
    """One record as its canonical JSONL line (without the newline)."""
    obj = {
        "id": record.id,
        "text": record.text,
        "label": record.label,
        "source_id": record.source_id,
    }
    return json.dumps(obj, ensure_ascii=False)


def write_corpus(corpus: Corpus, path) -> None:
    """Write a corpus in canonical order; loading the file reproduces the
    corpus exactly."""
    with open(path, "w", encoding="utf-8") as handle:
        for record in corpus.iter_records():
            handle.write(record_json(record) + "\n")
