"""
A tour of the similarity metrics
================================

Every metric in the package, applied to one pair of sentences, with the
numbers explained as they appear. Run it top to bottom:

    python3 demos/metric_tour.py
"""

from rankaug import (
    METRIC_DIRECTIONS,
    bleu,
    lev_char,
    lev_word,
    lev_word_norm,
    meteor,
    rouge_l,
    stem,
    tokenize,
)

# Two sentences that say the same thing differently: some shared words,
# one inflection change (booked/booking), one reordering.
original = "I booked a flight to Boston yesterday."
candidate = "Yesterday I was booking a flight to Boston."

a = tokenize(original)
b = tokenize(candidate)
print("original tokens: ", a)
print("candidate tokens:", b)
print()

# Character-level edit distance works on the raw strings; the word-level
# variant treats each token as one atomic symbol.
print("lev_char:", lev_char(original, candidate))
print("lev_word:", lev_word(a, b))

# Normalizing by the longer sequence gives a symmetric value in [0, 1]:
# 0.0 means the token sequences are identical, 1.0 means nothing aligns.
print("lev_word_norm:", round(lev_word_norm(a, b), 4))
print()

# BLEU multiplies smoothed n-gram precisions (n = 1..4) and a brevity
# penalty. The reordering costs it dearly: few 3- and 4-grams survive.
print("bleu:", round(bleu(b, a), 4))

# ROUGE-L is the F1 of the longest common subsequence, so it forgives
# the reordering more: one long in-order run is enough.
print("rouge_l:", round(rouge_l(b, a), 4))

# METEOR matches unigrams in two stages (exact, then stemmed) and
# penalizes fragmentation: fewer contiguous matched chunks score higher.
# The stemming stage is what lets booked/booking match at all.
print("meteor:", round(meteor(b, a), 4))
print("meteor, no stemming:", round(meteor(b, a, use_stem=False), 4))
print("  stem('booked') =", stem("booked"), " stem('booking') =", stem("booking"))
print()

# Each metric knows which direction is better, so downstream code never
# hardcodes a sort order.
for name in sorted(METRIC_DIRECTIONS):
    print(f"{name}: {METRIC_DIRECTIONS[name]}")
