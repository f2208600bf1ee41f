"""Shared text primitives: tokenization, n-gram counting, stemming.

Every metric in this package runs on the output of the same tokenizer so
that scores computed for the same corpus are comparable with each other.
"""

from __future__ import annotations

import unicodedata
from collections import Counter

TokenSeq = list[str]

NGram = tuple[str, ...]


def _is_punct(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P")


def tokenize(text: str) -> TokenSeq:
    """Lowercase *text* and split it into word and punctuation tokens.

    Chunks are separated by whitespace; any run of leading or trailing
    punctuation on a chunk is then peeled off one mark at a time, each
    mark becoming its own token. Punctuation inside a chunk (the
    apostrophe in "don't", the hyphen in "on-time") stays attached.

    >>> tokenize("Book a flight.")
    ['book', 'a', 'flight', '.']
    >>> tokenize("don't stop")
    ["don't", 'stop']
    """
    tokens: TokenSeq = []
    for chunk in text.lower().split():
        lead: list[str] = []
        while chunk and _is_punct(chunk[0]):
            lead.append(chunk[0])
            chunk = chunk[1:]
        trail: list[str] = []
        while chunk and _is_punct(chunk[-1]):
            trail.append(chunk[-1])
            chunk = chunk[:-1]
        tokens.extend(lead)
        if chunk:
            tokens.append(chunk)
        tokens.extend(reversed(trail))
    return tokens


def ngrams(tokens: TokenSeq, n: int) -> Counter[NGram]:
    """Multiset of the sliding windows of width *n* over *tokens*.

    The multiplicities always sum to max(0, len(tokens) - n + 1).
    """
    if n < 1:
        raise ValueError(f"n-gram order must be >= 1, got {n}")
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


class _Porter:
    """English suffix stripper following the classic Porter algorithm.

    This is the algorithm as found in the author's ANSI C release, i.e.
    including the two departures from the 1980 paper that every widely
    used port carries ("bli" -> "ble" instead of "abli" -> "able", and
    the extra "logi" -> "log" rule).
    """

    _VOWELS = "aeiou"

    # step 2/3 rules: keyed by the dispatch letter, (suffix, replacement)
    # pairs tried in order; the first suffix that matches settles the
    # step whether or not its measure condition passes.
    _STEP2 = {
        "a": (("ational", "ate"), ("tional", "tion")),
        "c": (("enci", "ence"), ("anci", "ance")),
        "e": (("izer", "ize"),),
        "l": (
            ("bli", "ble"),
            ("alli", "al"),
            ("entli", "ent"),
            ("eli", "e"),
            ("ousli", "ous"),
        ),
        "o": (("ization", "ize"), ("ation", "ate"), ("ator", "ate")),
        "s": (
            ("alism", "al"),
            ("iveness", "ive"),
            ("fulness", "ful"),
            ("ousness", "ous"),
        ),
        "t": (("aliti", "al"), ("iviti", "ive"), ("biliti", "ble")),
        "g": (("logi", "log"),),
    }
    _STEP3 = {
        "e": (("icate", "ic"), ("ative", ""), ("alize", "al")),
        "i": (("iciti", "ic"),),
        "l": (("ical", "ic"), ("ful", "")),
        "s": (("ness", ""),),
    }
    _STEP4 = {
        "a": ("al",),
        "c": ("ance", "ence"),
        "e": ("er",),
        "i": ("ic",),
        "l": ("able", "ible"),
        "n": ("ant", "ement", "ment", "ent"),
        "o": ("ion", "ou"),
        "s": ("ism",),
        "t": ("ate", "iti"),
        "u": ("ous",),
        "v": ("ive",),
        "z": ("ize",),
    }

    def _cons(self, w: str, i: int) -> bool:
        ch = w[i]
        if ch in self._VOWELS:
            return False
        if ch == "y":
            return True if i == 0 else not self._cons(w, i - 1)
        return True

    def _measure(self, stem: str) -> int:
        # m in the [C](VC){m}[V] decomposition: vowel->consonant crossings
        m = 0
        prev_vowel = False
        for i in range(len(stem)):
            if self._cons(stem, i):
                if prev_vowel:
                    m += 1
                prev_vowel = False
            else:
                prev_vowel = True
        return m

    def _has_vowel(self, stem: str) -> bool:
        return any(not self._cons(stem, i) for i in range(len(stem)))

    def _double_cons(self, w: str) -> bool:
        return len(w) >= 2 and w[-1] == w[-2] and self._cons(w, len(w) - 1)

    def _cvc(self, w: str) -> bool:
        # consonant-vowel-consonant ending where the last consonant is
        # not w, x or y; needs at least three letters
        if len(w) < 3:
            return False
        return (
            self._cons(w, len(w) - 1)
            and not self._cons(w, len(w) - 2)
            and self._cons(w, len(w) - 3)
            and w[-1] not in "wxy"
        )

    def _step1ab(self, w: str) -> str:
        if w.endswith("sses"):
            w = w[:-2]
        elif w.endswith("ies"):
            w = w[:-2]
        elif w.endswith("s") and not w.endswith("ss"):
            w = w[:-1]
        stripped = False
        if w.endswith("eed"):
            if self._measure(w[:-3]) > 0:
                w = w[:-1]
        elif w.endswith("ed") and self._has_vowel(w[:-2]):
            w = w[:-2]
            stripped = True
        elif w.endswith("ing") and self._has_vowel(w[:-3]):
            w = w[:-3]
            stripped = True
        if stripped:
            if w.endswith(("at", "bl", "iz")):
                w += "e"
            elif self._double_cons(w) and w[-1] not in "lsz":
                w = w[:-1]
            elif self._measure(w) == 1 and self._cvc(w):
                w += "e"
        return w

    def _step1c(self, w: str) -> str:
        if w.endswith("y") and self._has_vowel(w[:-1]):
            w = w[:-1] + "i"
        return w

    def _replace(self, w: str, table, key_at: int) -> str:
        if len(w) < 2:
            return w
        rules = table.get(w[key_at])
        if rules:
            for suffix, repl in rules:
                if w.endswith(suffix):
                    stem = w[: -len(suffix)]
                    if self._measure(stem) > 0:
                        return stem + repl
                    return w
        return w

    def _step4(self, w: str) -> str:
        if len(w) < 2:
            return w
        rules = self._STEP4.get(w[-2])
        if rules:
            for suffix in rules:
                if w.endswith(suffix):
                    stem = w[: -len(suffix)]
                    if suffix == "ion" and not stem.endswith(("s", "t")):
                        return w
                    if self._measure(stem) > 1:
                        return stem
                    return w
        return w

    def _step5(self, w: str) -> str:
        if w.endswith("e"):
            a = self._measure(w)
            if a > 1 or (a == 1 and not self._cvc(w[:-1])):
                w = w[:-1]
        if w.endswith("l") and self._double_cons(w) and self._measure(w) > 1:
            w = w[:-1]
        return w

    def stem(self, w: str) -> str:
        w = self._step1ab(w)
        w = self._step1c(w)
        w = self._replace(w, self._STEP2, -2)
        w = self._replace(w, self._STEP3, -1)
        w = self._step4(w)
        return self._step5(w)


_PORTER = _Porter()


def stem(token: str) -> str:
    """Porter stem of a lowercase *token*; tokens of length <= 2 pass through."""
    if len(token) <= 2:
        return token
    return _PORTER.stem(token)
