"""Pairwise lexical distance between the languages of a concept list.

The distance between two languages is the mean, over concepts attested in
both, of the normalized edit distance between their forms. Concepts missing
on either side are imputed with that same mean, which leaves the mean
unchanged, so only attested pairs are averaged here.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass
from typing import Optional

from komori.editdist import normalized_distance
from komori.errors import NoComparablePairs
from komori.lexicon import ConceptEntry, ConceptList

DECIMALS = 6


@dataclass(frozen=True)
class DistanceMatrix:
    list_name: str
    languages: tuple[str, ...]
    values: tuple[tuple[float, ...], ...]
    pair_support: tuple[tuple[int, ...], ...]

    def get(self, lang_a: str, lang_b: str) -> float:
        return self.values[self.languages.index(lang_a)][self.languages.index(lang_b)]

    def to_tsv(self) -> str:
        """Lower-triangular table, one row per language, values to 6 decimals."""
        buf = io.StringIO()
        n = len(self.languages)
        buf.write("\t".join(["language", *self.languages]) + "\n")
        for i, lang in enumerate(self.languages):
            cells = [f"{self.values[i][j]:.{DECIMALS}f}" for j in range(i + 1)]
            cells += [""] * (n - i - 1)
            buf.write("\t".join([lang, *cells]) + "\n")
        return buf.getvalue()


def concept_distance(entry: ConceptEntry, lang_a: str, lang_b: str) -> Optional[float]:
    """Closest pair of variants between the two languages, or None if either is missing."""
    forms_a = entry.variants(lang_a)
    forms_b = entry.variants(lang_b)
    if not forms_a or not forms_b:
        return None
    return min(normalized_distance(a, b) for a in forms_a for b in forms_b)


def language_distance(concepts: ConceptList, lang_a: str, lang_b: str) -> tuple[float, int]:
    """Mean concept distance and the number of concepts it was computed over."""
    concepts.check_language(lang_a)
    concepts.check_language(lang_b)
    dists = [d for e in concepts.entries if (d := concept_distance(e, lang_a, lang_b)) is not None]
    if not dists:
        raise NoComparablePairs(lang_a, lang_b)
    # fsum keeps the mean independent of concept order
    return math.fsum(dists) / len(dists), len(dists)


def distance_matrix(concepts: ConceptList) -> DistanceMatrix:
    langs = concepts.languages
    n = len(langs)
    if n < 2:
        raise ValueError("a distance matrix needs at least two languages")
    values = [[0.0] * n for _ in range(n)]
    support = [[0] * n for _ in range(n)]
    for i in range(n):
        support[i][i] = sum(1 for e in concepts.entries if e.variants(langs[i]))
        for j in range(i):
            value, count = language_distance(concepts, langs[i], langs[j])
            values[i][j] = values[j][i] = value
            support[i][j] = support[j][i] = count
    return DistanceMatrix(
        list_name=concepts.name,
        languages=langs,
        values=tuple(map(tuple, values)),
        pair_support=tuple(map(tuple, support)),
    )
