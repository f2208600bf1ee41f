"""Word-overlap and edit-distance metrics: Levenshtein, BLEU, ROUGE-L, METEOR.

All sentence metrics operate on token sequences produced by
:func:`rankaug.text.tokenize` and are plain deterministic functions, so they
are safe to call from any number of threads.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .text import TokenSeq, ngrams, stem

#: direction of every metric this package produces: does a larger value mean
#: a better (more similar, or for self_ld more diverse) candidate?
METRIC_DIRECTIONS = {
    "bleu": "higher_better",
    "lev_char": "lower_better",
    "lev_word_norm": "lower_better",
    "rouge_l": "higher_better",
    "meteor": "higher_better",
    "bertscore_f1": "higher_better",
    "self_ld": "higher_better",
}


@dataclass
class MetricValue:
    """A metric score tagged with its name and direction."""

    metric: str
    value: float
    direction: str

    @classmethod
    def of(cls, metric: str, value: float) -> "MetricValue":
        return cls(metric, value, METRIC_DIRECTIONS[metric])


def _edit_distance(a: Sequence, b: Sequence) -> int:
    # Bit-parallel DP (Myers): the usual Levenshtein column is encoded as
    # vertical-delta bit vectors, so one pass over `b` advances the whole
    # column with a handful of integer ops instead of an inner loop.
    if a == b:
        return 0
    la, lb = len(a), len(b)
    # shared prefix/suffix contributes nothing to the distance
    lo = 0
    limit = min(la, lb)
    while lo < limit and a[lo] == b[lo]:
        lo += 1
    hi = 0
    limit -= lo
    while hi < limit and a[la - 1 - hi] == b[lb - 1 - hi]:
        hi += 1
    if lo or hi:
        a = a[lo : la - hi]
        b = b[lo : lb - hi]
        la -= lo + hi
        lb -= lo + hi
    if not la:
        return lb
    if not lb:
        return la
    if la < lb:  # bit vectors span the longer side, the scan runs the shorter
        a, b = b, a
        la, lb = lb, la
    masks: dict = {}
    for i, sym in enumerate(a):
        masks[sym] = masks.get(sym, 0) | (1 << i)
    full = (1 << la) - 1
    high = 1 << (la - 1)
    vp = full  # every cell of the first column is one more than the cell above
    vn = 0
    dist = la
    get = masks.get
    for sym in b:
        eq = get(sym, 0)
        d0 = (((eq & vp) + vp) ^ vp) | eq | vn
        hp = vn | ~(d0 | vp)
        hn = vp & d0
        if hp & high:
            dist += 1
        elif hn & high:
            dist -= 1
        hp = hp << 1 | 1
        vp = (hn << 1 | ~(d0 | hp)) & full  # & full keeps the ints bounded
        vn = hp & d0
    return dist


def lev_char(a: str, b: str) -> int:
    """Minimum number of single-character insertions, deletions, or
    substitutions turning *a* into *b*."""
    return _edit_distance(a, b)


def lev_word(a: TokenSeq, b: TokenSeq) -> int:
    """Edit distance with whole tokens as the atomic symbols."""
    return _edit_distance(a, b)


def lev_word_norm(a: TokenSeq, b: TokenSeq) -> float:
    """Word-level edit distance normalized by the longer sequence.

    Dividing by max(len) rather than by one side's length keeps the value
    symmetric and in [0, 1]; two empty sequences are defined to be at
    distance 0.
    """
    longer = max(len(a), len(b))
    if longer == 0:
        return 0.0
    return _edit_distance(a, b) / longer


def bleu(candidate: TokenSeq, reference: TokenSeq) -> float:
    """Sentence-level BLEU with add-one smoothing.

    Clipped n-gram precisions for orders 1..4 are combined by geometric
    mean; orders >= 2 are smoothed by adding one to both the match count
    and the window count, so only a total unigram miss can zero the
    score. Candidates shorter than the reference are scaled by the
    brevity penalty exp(1 - len(reference)/len(candidate)).
    """
    if not candidate or not reference:
        raise ValueError("bleu requires non-empty candidate and reference")
    log_sum = 0.0
    for n in range(1, 5):
        cand_counts = ngrams(candidate, n)
        ref_counts = ngrams(reference, n)
        matched = sum(min(c, ref_counts[g]) for g, c in cand_counts.items())
        total = max(len(candidate) - n + 1, 0)
        if n == 1:
            if matched == 0:
                return 0.0
            precision = matched / total
        else:
            precision = (matched + 1) / (total + 1)
        log_sum += math.log(precision)
    if len(candidate) < len(reference):
        brevity = math.exp(1 - len(reference) / len(candidate))
    else:
        brevity = 1.0
    return brevity * math.exp(log_sum / 4)


def _lcs_len(a: Sequence, b: Sequence) -> int:
    if len(b) > len(a):
        a, b = b, a
    prev = [0] * (len(b) + 1)
    cur = [0] * (len(b) + 1)
    for x in a:
        for j, y in enumerate(b, 1):
            cur[j] = prev[j - 1] + 1 if x == y else max(prev[j], cur[j - 1])
        prev, cur = cur, prev
    return prev[len(b)]


def rouge_l(candidate: TokenSeq, reference: TokenSeq) -> float:
    """F1 over the longest common subsequence of the two token sequences."""
    if not candidate or not reference:
        raise ValueError("rouge_l requires non-empty candidate and reference")
    lcs = _lcs_len(candidate, reference)
    if lcs == 0:
        return 0.0
    precision = lcs / len(candidate)
    recall = lcs / len(reference)
    return 2 * precision * recall / (precision + recall)


# ---------------------------------------------------------------------------
# METEOR
# ---------------------------------------------------------------------------

def _chunk_count(alignment: dict[int, int]) -> int:
    # a chunk starts at every matched pair whose left neighbor is not
    # matched to its own left neighbor
    return sum(1 for i, j in alignment.items() if alignment.get(i - 1) != j - 1)


def _stage_quotas(
    cand: TokenSeq,
    ref: TokenSeq,
    aligned: dict[int, int],
    key: Callable[[str], str],
) -> tuple[dict[int, str], dict[str, list[int]], dict[str, int]]:
    """Group the still-unmatched positions of both sides by *key*.

    Within one stage the match graph is a disjoint union of complete
    bipartite blocks (every token has exactly one key), so a maximum
    matching simply pairs min(count, count) occurrences per block; the
    returned quotas encode that cardinality.
    """
    used_ref = set(aligned.values())
    cand_keys: dict[int, str] = {}
    ref_slots: dict[str, list[int]] = {}
    for j in range(len(ref)):
        if j not in used_ref:
            ref_slots.setdefault(key(ref[j]), []).append(j)
    cand_count: dict[str, int] = {}
    for i in range(len(cand)):
        if i not in aligned:
            k = key(cand[i])
            if k in ref_slots:
                cand_keys[i] = k
                cand_count[k] = cand_count.get(k, 0) + 1
    quotas = {k: min(c, len(ref_slots[k])) for k, c in cand_count.items()}
    return cand_keys, ref_slots, quotas


def _greedy_stage(cand_len, aligned, cand_keys, ref_slots, quotas):
    """Left-to-right fallback: prefer extending the current chunk, else
    take the leftmost free reference slot."""
    aligned = dict(aligned)
    free = {k: sorted(slots) for k, slots in ref_slots.items()}
    remaining = dict(quotas)
    for i in range(cand_len):
        k = cand_keys.get(i)
        if k is None or remaining.get(k, 0) == 0:
            continue
        slots = free[k]
        if not slots:
            continue
        want = aligned.get(i - 1)
        pick = None
        if want is not None and (want + 1) in slots:
            pick = want + 1
        else:
            pick = slots[0]
        slots.remove(pick)
        remaining[k] -= 1
        aligned[i] = pick
    return aligned


def _exact_stage(cand_len, aligned, cand_keys, ref_slots, quotas):
    """Depth-first search over all maximum matchings of this stage,
    keeping the first one that minimizes the cumulative chunk count.

    Chunks never decrease as pairs are appended left to right, so any
    branch already at the best-known count is pruned.
    """
    positions = [i for i in range(cand_len) if i in cand_keys]
    later = {}  # how many stage positions with this key sit at >= index
    tally: dict[str, int] = {}
    for idx in range(len(positions) - 1, -1, -1):
        k = cand_keys[positions[idx]]
        tally[k] = tally.get(k, 0) + 1
        later[idx] = dict(tally)
    best_chunks = math.inf
    best_assign: dict[int, int] = {}
    free = {k: sorted(slots) for k, slots in ref_slots.items()}

    def run_chunks(assign: dict[int, int]) -> int:
        merged = dict(aligned)
        merged.update(assign)
        return _chunk_count(merged)

    def lookup(assign: dict[int, int], i: int):
        if i in assign:
            return assign[i]
        return aligned.get(i)

    def recurse(idx: int, assign: dict[int, int], remaining: dict[str, int], chunks_so_far: int):
        nonlocal best_chunks, best_assign
        if chunks_so_far >= best_chunks:
            return
        if idx == len(positions):
            # account for fixed pairs to the right of the last stage match
            total = run_chunks(assign)
            if total < best_chunks:
                best_chunks = total
                best_assign = dict(assign)
            return
        i = positions[idx]
        k = cand_keys[i]
        need = remaining[k]
        options: list[int | None] = []
        if need > 0:
            prev = lookup(assign, i - 1)
            cont = prev + 1 if prev is not None else None
            slots = free[k]
            if cont is not None and cont in slots:
                options.append(cont)
            options.extend(j for j in slots if j != cont)
        # skipping is legal only if the quota can still be met later
        if later[idx][k] - 1 >= need:
            options.append(None)
        for j in options:
            if j is None:
                recurse(idx + 1, assign, remaining, chunks_so_far)
                continue
            free[k].remove(j)
            remaining[k] = need - 1
            assign[i] = j
            prev = lookup(assign, i - 1)
            started = 0 if prev is not None and prev == j - 1 else 1
            recurse(idx + 1, assign, remaining, chunks_so_far + started)
            del assign[i]
            remaining[k] = need
            bisect.insort(free[k], j)

    recurse(0, {}, dict(quotas), 0)
    merged = dict(aligned)
    merged.update(best_assign)
    return merged


def _align(cand: TokenSeq, ref: TokenSeq, use_stem: bool, exact_cutoff: int) -> dict[int, int]:
    aligned: dict[int, int] = {}
    stages: list[Callable[[str], str]] = [lambda t: t]
    if use_stem:
        stages.append(stem)
    for key in stages:
        cand_keys, ref_slots, quotas = _stage_quotas(cand, ref, aligned, key)
        if not quotas:
            continue
        total_matched = len(aligned) + sum(quotas.values())
        if total_matched <= exact_cutoff:
            aligned = _exact_stage(len(cand), aligned, cand_keys, ref_slots, quotas)
        else:
            aligned = _greedy_stage(len(cand), aligned, cand_keys, ref_slots, quotas)
    return aligned


def meteor(
    candidate: TokenSeq,
    reference: TokenSeq,
    *,
    use_stem: bool = True,
    exact_cutoff: int = 20,
) -> float:
    """Two-stage unigram-alignment score with a fragmentation penalty.

    Stage one pairs identical tokens, stage two pairs leftover tokens
    whose Porter stems agree (skipped when *use_stem* is false, e.g. for
    non-English corpora). Each stage takes a maximum matching and, among
    the maximum matchings, one that minimizes the number of chunks:
    maximal runs of pairs contiguous and identically ordered on both
    sides. The search is exact up to *exact_cutoff* matched tokens and
    falls back to a left-to-right greedy matching beyond that.

    With m matched pairs in c chunks: precision m/len(candidate), recall
    m/len(reference), F_mean = 10PR/(R + 9P), and the final score is
    F_mean * (1 - 0.5 * (c/m)^3); 0 when nothing matches.
    """
    if not candidate or not reference:
        raise ValueError("meteor requires non-empty candidate and reference")
    alignment = _align(candidate, reference, use_stem, exact_cutoff)
    m = len(alignment)
    if m == 0:
        return 0.0
    chunks = _chunk_count(alignment)
    precision = m / len(candidate)
    recall = m / len(reference)
    f_mean = 10 * precision * recall / (recall + 9 * precision)
    penalty = 0.5 * (chunks / m) ** 3
    return f_mean * (1 - penalty)
