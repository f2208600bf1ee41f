"""
Ranking one paraphrase group
============================

How a group of machine-generated paraphrases turns into semantic ranks,
diversity ranks, and a fused order. Uses the deterministic test embedder,
so the numbers are reproducible anywhere:

    python3 demos/rank_one_group.py
"""

from rankaug import (
    ParaphraseGroup,
    Record,
    TestEmbedderProvider,
    rank_group,
    select_top_n,
    self_ld_scores,
)

# One original and four candidates. The first candidate changes a single
# word, the second rephrases boldly, the third is an exact copy of the
# original (a common failure of paraphrase generators), and the fourth
# repeats candidate one word for word.
original = Record("o1", "book a flight to boston", "booking", None)
candidates = (
    Record("o1c0", "book a flight to boston now", "booking", "o1"),
    Record("o1c1", "reserve a seat on a boston plane", "booking", "o1"),
    Record("o1c2", "book a flight to boston", "booking", "o1"),
    Record("o1c3", "book a flight to boston now", "booking", "o1"),
)
group = ParaphraseGroup(original, candidates)

# The diversity score averages the normalized word-level edit distance to
# the original AND to every sibling candidate. The bold rewrite stands
# clear of the pack; the copy and the duplicated pair keep dragging each
# other down to the same low value.
print("diversity scores:")
for record, score in zip(candidates, self_ld_scores(group)):
    print(f"  {record.id}  {score:.4f}  {record.text!r}")
print()

# Full scoring: semantic fidelity comes from greedy token-embedding
# alignment against the original. Higher is better on both axes; each
# axis becomes a 1-based rank, and the harmonic mean fuses the two
# (lower fused rank = better overall). Equal scores rank by input order,
# so the second instance of a duplicated text always sits below the
# first: o1c3 collects the worst rank pair and the worst fused rank.
provider = TestEmbedderProvider(dimension=8, seed=42)
cards = rank_group(group, provider)

print("id     semantic  diversity  sem_rank  div_rank  fused")
for card in cards:
    print(
        f"{card.candidate_id}  {card.semantic_score:8.4f}  "
        f"{card.diversity_score:9.4f}  {card.semantic_rank:8d}  "
        f"{card.diversity_rank:8d}  {card.fused_rank:.3f}"
    )
print()

# Keep the best two. Harmonic fusion rewards being excellent on at least
# one axis, so the selection spans both: the semantically closest
# candidate and the most diverse one, rather than two near-copies. The
# hash embedder only sees token overlap; with contextual embeddings (see
# the embedder package) a faithful rewrite like o1c1 scores high
# semantically too, instead of landing last.
best = select_top_n(group, cards, 2)
print("kept:", [record.id for record in best])
