"""BK-tree over a lexicon for radius-bounded Levenshtein search.

Every word stored under the edge labelled ``d`` of a node is at exactly
edit distance ``d`` from that node's word. A query at radius ``r`` that is
at distance ``q`` from a node only has to descend into edges in
``[q - r, q + r]`` (triangle inequality), and when ``q`` exceeds the largest
edge label plus ``r`` the whole subtree is skipped, which lets the distance
kernel stop early.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from komori.editdist import (
    bounded_kernel,
    levenshtein_bounded,
    meets_similarity,
    radius_for_similarity,
    similarity_from_raw,
)
from komori.errors import EmptyLexicon
from komori.lexicon import Lexicon


@dataclass(frozen=True)
class FuzzyMatch:
    query: str
    match: str
    raw_distance: int
    similarity: float


class _Node:
    __slots__ = ("word", "children", "max_edge")

    def __init__(self, word: str):
        self.word = word
        self.children: dict[int, _Node] = {}
        self.max_edge = -1


class BkTree:
    """Metric tree keyed by exact Levenshtein distance.

    Words are inserted in sorted order, so the tree shape does not depend on
    how the lexicon was read. ``evaluations`` counts distance computations
    made by queries (not by construction).
    """

    def __init__(self, words: Iterable[str] = ()):
        self._root: Optional[_Node] = None
        self._words: set[str] = set()
        self._max_len = 0
        self._lock = threading.Lock()
        self.evaluations = 0
        for w in sorted(set(words)):
            self.add(w)

    def __len__(self) -> int:
        return len(self._words)

    def __contains__(self, word: object) -> bool:
        return word in self._words

    def __iter__(self) -> Iterator[str]:
        return iter(sorted(self._words))

    def __getstate__(self) -> dict:
        state = self.__dict__.copy()
        del state["_lock"]
        return state

    def __setstate__(self, state: dict) -> None:
        self.__dict__.update(state)
        self._lock = threading.Lock()

    def add(self, word: str) -> None:
        if not word:
            raise ValueError("cannot index the empty word")
        if word in self._words:
            return
        self._words.add(word)
        self._max_len = max(self._max_len, len(word))
        if self._root is None:
            self._root = _Node(word)
            return
        node = self._root
        while True:
            d = levenshtein_bounded(word, node.word, len(word) + len(node.word))
            child = node.children.get(d)
            if child is None:
                node.children[d] = _Node(word)
                node.max_edge = max(node.max_edge, d)
                return
            node = child

    def _search(self, word: str, radius: int) -> tuple[list[tuple[str, int]], int]:
        if self._root is None:
            return [], 0
        if radius == 0:
            return ([(word, 0)] if word in self._words else []), 0
        found = []
        evaluations = 0
        kernel = bounded_kernel
        stack = [self._root]
        pop, push = stack.pop, stack.append
        while stack:
            node = pop()
            evaluations += 1
            bound = node.max_edge + radius
            if bound < radius:
                bound = radius
            d = kernel(word, node.word, score_cutoff=bound)
            if d > bound:
                continue
            if d <= radius:
                found.append((node.word, d))
            children = node.children
            if not children:
                continue
            lo = d - radius
            if lo < 1:
                lo = 1
            for edge in range(lo, d + radius + 1):
                child = children.get(edge)
                if child is not None:
                    push(child)
        return found, evaluations

    def _count(self, n: int) -> None:
        if n:
            with self._lock:
                self.evaluations += n

    def query_radius(self, word: str, radius: int) -> set[FuzzyMatch]:
        """All indexed words within ``radius`` edits of ``word``."""
        if radius < 0:
            raise ValueError("radius must be non-negative")
        found, n = self._search(word, radius)
        self._count(n)
        return {
            FuzzyMatch(word, w, d, similarity_from_raw(d, max(len(word), len(w))))
            for w, d in found
        }

    def best_similar(self, word: str, min_similarity: float) -> Optional[FuzzyMatch]:
        """Most similar indexed word with similarity >= ``min_similarity``, or None.

        Ties go to the shorter candidate, then the lexicographically smaller one.
        """
        if not word:
            raise ValueError("query word must be non-empty")
        if not 0 <= min_similarity <= 100:
            raise ValueError("min_similarity must be within [0, 100]")
        widest = len(word) + self._max_len
        if min_similarity == 0:
            radius = widest
        else:
            radius = min(radius_for_similarity(len(word), min_similarity), widest)
        found, n = self._search(word, radius)
        self._count(n)
        best = None
        best_key = None
        for w, d in found:
            longest = max(len(word), len(w))
            if not meets_similarity(d, longest, min_similarity):
                continue
            sim = similarity_from_raw(d, longest)
            key = (-sim, len(w), w)
            if best_key is None or key < best_key:
                best_key = key
                best = FuzzyMatch(word, w, d, sim)
        return best


def build(lexicon: Lexicon | Iterable[str]) -> BkTree:
    words = lexicon.words if isinstance(lexicon, Lexicon) else set(lexicon)
    if not words:
        raise EmptyLexicon()
    return BkTree(words)


def query_radius(tree: BkTree, word: str, radius: int) -> set[FuzzyMatch]:
    return tree.query_radius(word, radius)


def best_similar(tree: BkTree, word: str, min_similarity: float) -> Optional[FuzzyMatch]:
    return tree.best_similar(word, min_similarity)
