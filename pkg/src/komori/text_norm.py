"""Canonical normalization and whitespace tokenization.

Every module that compares words goes through :func:`normalize` so that
"Mimi", "mimi," and "MIMI" all count as the same word.

Pipeline: NFC, Unicode case folding, typographic apostrophe to ASCII,
anything that is not a letter, digit, combining mark or apostrophe becomes
a space, then whitespace is collapsed. Apostrophes are kept inside words
(``ng'ombe``) but stripped from token edges, where they are quote marks.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from typing import Iterable

APOSTROPHE = "'"
_APOSTROPHE_MAP = str.maketrans({"’": APOSTROPHE})


@dataclass(frozen=True)
class Token:
    surface: str
    position: int


@dataclass(frozen=True)
class NormalizedText:
    original: str
    normalized: str
    tokens: tuple[Token, ...]

    @property
    def words(self) -> list[str]:
        return [t.surface for t in self.tokens]


def _keep(ch: str) -> bool:
    if ch == APOSTROPHE:
        return True
    cat = unicodedata.category(ch)
    return cat[0] in ("L", "M") or cat == "Nd"


def _fold(text: str) -> str:
    text = unicodedata.normalize("NFC", text).casefold()
    # case folding can emit sequences that recompose
    return unicodedata.normalize("NFC", text).translate(_APOSTROPHE_MAP)


def tokenize(raw: str) -> list[str]:
    """Return the normalized word list of ``raw`` (no Token wrappers)."""
    cleaned = "".join(ch if _keep(ch) else " " for ch in _fold(raw))
    words = []
    for chunk in cleaned.split():
        chunk = chunk.strip(APOSTROPHE)
        if chunk:
            words.append(chunk)
    return words


def normalize(raw: str) -> NormalizedText:
    words = tokenize(raw)
    tokens = tuple(Token(w, i) for i, w in enumerate(words))
    return NormalizedText(original=raw, normalized=" ".join(words), tokens=tokens)


def word_set(texts: Iterable[NormalizedText]) -> frozenset[str]:
    """Unique word forms over a normalized corpus."""
    words: set[str] = set()
    for text in texts:
        words.update(t.surface for t in text.tokens)
    return frozenset(words)
