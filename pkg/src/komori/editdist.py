"""Levenshtein distance and the length-normalized lexical distance.

Characters are Unicode scalar values; callers are expected to have run the
words through :mod:`komori.text_norm` (NFC) first so that precomposed and
decomposed accents compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Optional, Sequence

from rapidfuzz.distance import Levenshtein as _rf_levenshtein

from komori.errors import BothEmpty


@dataclass(frozen=True)
class EditCost:
    raw: int
    normalized: float


def levenshtein(a: Sequence[Hashable], b: Sequence[Hashable]) -> int:
    """Minimum number of insertions, deletions and substitutions turning a into b.

    Works on any pair of sequences (strings, token lists). Two-row
    Wagner-Fischer, O(len(a) * len(b)) time and O(min) memory.
    """
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        cur = [i]
        for j, cb in enumerate(b, 1):
            cost = prev[j - 1] if ca == cb else prev[j - 1] + 1
            ins = cur[j - 1] + 1
            dele = prev[j] + 1
            cur.append(min(cost, ins, dele))
        prev = cur
    return prev[-1]


# Raw kernel behind levenshtein_bounded: returns k + 1 when the distance
# exceeds k instead of None. For tight loops that can't afford the wrapper.
bounded_kernel = _rf_levenshtein.distance


def levenshtein_bounded(a: Sequence[Hashable], b: Sequence[Hashable], k: int) -> Optional[int]:
    """Levenshtein distance if it is at most ``k``, else None.

    Hot path of the BK-tree traversal; backed by rapidfuzz's bit-parallel
    kernel, which stops as soon as the band is exceeded.
    """
    if k < 0:
        return None
    if abs(len(a) - len(b)) > k:
        return None
    d = _rf_levenshtein.distance(a, b, score_cutoff=k)
    return d if d <= k else None


def normalized_distance(a: str, b: str) -> float:
    """Edit distance divided by the longer word's length, scaled to 0..100."""
    longest = max(len(a), len(b))
    if longest == 0:
        raise BothEmpty()
    return 100.0 * levenshtein(a, b) / longest


def edit_cost(a: str, b: str) -> EditCost:
    longest = max(len(a), len(b))
    if longest == 0:
        raise BothEmpty()
    raw = levenshtein(a, b)
    return EditCost(raw=raw, normalized=100.0 * raw / longest)


def similarity(a: str, b: str) -> float:
    return 100.0 - normalized_distance(a, b)


def similarity_from_raw(raw: int, longest: int) -> float:
    return 100.0 - 100.0 * raw / longest


def meets_similarity(raw: int, longest: int, threshold: float) -> bool:
    """Exact test of ``similarity >= threshold`` without float round-off.

    similarity >= s  <=>  100 * raw <= (100 - s) * longest
    """
    return 100 * raw <= (100 - Fraction(threshold)) * longest


def radius_for_similarity(length: int, threshold: float) -> int:
    """Largest edit distance any candidate can have and still reach ``threshold``.

    With s = threshold / 100 and c a candidate for query w:
    raw <= (1 - s) * max(|w|, |c|) and |c| <= |w| + raw, so
    raw <= |w| * (1 - s) / s. At s = 0.8 that is floor(|w| / 4).
    Undefined at threshold 0, where every candidate qualifies.
    """
    if threshold <= 0:
        raise ValueError("radius is unbounded for a zero threshold")
    s = Fraction(threshold)
    return int((100 - s) * length / s)
