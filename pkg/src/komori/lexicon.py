"""Concept lists (Swadesh-style) and monolingual lexicons.

A concept list file is UTF-8 TSV::

    gloss<TAB>sw<TAB>zdj
    egg<TAB>yai<TAB>djwai|dzundzu
    dog<TAB><TAB>mbwa

Variants are separated by ``|``; an empty cell means the form is missing.
Language ids are opaque, case-sensitive strings.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from komori import text_norm
from komori.errors import DuplicateGloss, MalformedRow, UnknownLanguage

VARIANT_DELIMITER = "|"


@dataclass(frozen=True)
class ConceptEntry:
    gloss: str
    forms: Mapping[str, tuple[str, ...]]

    def variants(self, lang: str) -> tuple[str, ...]:
        return self.forms.get(lang, ())


@dataclass(frozen=True)
class ConceptList:
    name: str
    languages: tuple[str, ...]
    entries: tuple[ConceptEntry, ...]

    def __len__(self) -> int:
        return len(self.entries)

    def check_language(self, lang: str) -> None:
        if lang not in self.languages:
            raise UnknownLanguage(lang)


@dataclass(frozen=True)
class Lexicon:
    language: str
    words: frozenset[str] = field(default_factory=frozenset)

    def __contains__(self, word: object) -> bool:
        return word in self.words

    def __len__(self) -> int:
        return len(self.words)

    @classmethod
    def from_texts(cls, language: str, texts: Iterable[text_norm.NormalizedText]) -> "Lexicon":
        return cls(language, text_norm.word_set(texts))

    @classmethod
    def from_words(cls, language: str, words: Iterable[str]) -> "Lexicon":
        """Build from raw word strings; each is normalized, multi-word lines add every token."""
        out: set[str] = set()
        for w in words:
            out.update(text_norm.tokenize(w))
        return cls(language, frozenset(out))


def _parse_cell(cell: str, line_no: int, lang: str) -> tuple[str, ...]:
    variants: list[str] = []
    for raw in cell.split(VARIANT_DELIMITER):
        words = text_norm.tokenize(raw)
        if not words:
            continue
        if len(words) > 1:
            raise MalformedRow(line_no, f"{lang} variant {raw.strip()!r} is not a single word")
        if words[0] not in variants:
            variants.append(words[0])
    return tuple(variants)


def load_concept_list(
    rows: Iterable[Sequence[str]],
    languages: Sequence[str],
    name: str = "",
    first_line: int = 2,
) -> ConceptList:
    """Build a ConceptList from ``[gloss, cell_lang1, cell_lang2, ...]`` rows.

    ``first_line`` is the source line number of the first row, used in error
    messages (2 when a header line precedes the rows).
    """
    languages = tuple(languages)
    if len(set(languages)) != len(languages):
        raise MalformedRow(first_line - 1, "duplicate language column")
    seen: set[str] = set()
    entries = []
    for line_no, row in enumerate(rows, first_line):
        if len(row) != len(languages) + 1:
            raise MalformedRow(line_no, f"expected {len(languages) + 1} cells, got {len(row)}")
        gloss = row[0].strip()
        if not gloss:
            raise MalformedRow(line_no, "empty gloss")
        if gloss in seen:
            raise DuplicateGloss(gloss, line_no)
        seen.add(gloss)
        forms = {lang: _parse_cell(cell, line_no, lang) for lang, cell in zip(languages, row[1:])}
        entries.append(ConceptEntry(gloss, forms))
    return ConceptList(name=name, languages=languages, entries=tuple(entries))


def parse_concept_tsv(text: str, name: str = "") -> ConceptList:
    text = text.removeprefix("\ufeff")
    lines = [line.removesuffix("\r") for line in text.split("\n")]
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise MalformedRow(1, "missing header")
    header = lines[0].split("\t")
    if len(header) < 2 or header[0].strip() != "gloss":
        raise MalformedRow(1, "header must be 'gloss<TAB>lang1<TAB>...'")
    languages = [h.strip() for h in header[1:]]
    if any(not lang for lang in languages):
        raise MalformedRow(1, "empty language id in header")
    rows = [line.split("\t") for line in lines[1:]]
    return load_concept_list(rows, languages, name=name)


def read_concept_list(path: str | Path, name: str | None = None) -> ConceptList:
    path = Path(path)
    return parse_concept_tsv(path.read_text(encoding="utf-8"), name=path.stem if name is None else name)


def dump_concept_list(concepts: ConceptList) -> str:
    buf = io.StringIO()
    buf.write("\t".join(["gloss", *concepts.languages]) + "\n")
    for entry in concepts.entries:
        cells = [VARIANT_DELIMITER.join(entry.variants(lang)) for lang in concepts.languages]
        buf.write("\t".join([entry.gloss, *cells]) + "\n")
    return buf.getvalue()


def coverage(concepts: ConceptList, lang: str) -> float:
    """Fraction of entries with at least one form for ``lang`` (0.0 for an empty list)."""
    concepts.check_language(lang)
    if not concepts.entries:
        return 0.0
    present = sum(1 for e in concepts.entries if e.variants(lang))
    return present / len(concepts.entries)


def read_lexicon(path: str | Path, language: str = "") -> Lexicon:
    text = Path(path).read_text(encoding="utf-8-sig")
    return Lexicon.from_words(language, text.splitlines())


def dump_lexicon(lexicon: Lexicon) -> str:
    return "".join(w + "\n" for w in sorted(lexicon.words))
