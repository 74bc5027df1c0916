"""Sentence filters that keep donor-language lines close to a target lexicon.

A sentence is retained when the share of its tokens covered by the lexicon
reaches ``coverage_threshold``. In exact mode a token is covered when it is
in the lexicon; in fuzzy mode when some lexicon word reaches
``similarity_threshold`` (100 minus the normalized edit distance).
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Literal, Optional, Sequence

from komori import text_norm
from komori.fuzzy_index import BkTree, FuzzyMatch
from komori.lexicon import Lexicon

log = logging.getLogger(__name__)

Mode = Literal["exact", "fuzzy"]


@dataclass(frozen=True)
class FilterConfig:
    coverage_threshold: float = 0.80
    similarity_threshold: float = 80.0
    mode: Mode = "exact"
    min_tokens: int = 1

    def __post_init__(self):
        if not 0.0 <= self.coverage_threshold <= 1.0:
            raise ValueError(f"coverage_threshold {self.coverage_threshold} outside [0, 1]")
        if not 0.0 <= self.similarity_threshold <= 100.0:
            raise ValueError(f"similarity_threshold {self.similarity_threshold} outside [0, 100]")
        if self.mode not in ("exact", "fuzzy"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.min_tokens < 1:
            raise ValueError("min_tokens must be >= 1")


@dataclass(frozen=True)
class FilterRecord:
    line_no: int
    original: str
    tokens: int
    matched: int
    coverage: float
    retained: bool
    matches: tuple[tuple[str, str, float], ...] = ()


@dataclass
class FilterStats:
    lines: int = 0
    token_occurrences: int = 0
    unique_tokens: int = 0
    cache_hits: int = 0
    evaluations: int = 0


def _record(
    line_no: int,
    original: Optional[str],
    words: list[str],
    matches: list[tuple[str, str, float]],
    cfg: FilterConfig,
) -> FilterRecord:
    n = len(words)
    matched = len(matches)
    cov = matched / n if n else 0.0
    return FilterRecord(
        line_no=line_no,
        original=original if original is not None else "",
        tokens=n,
        matched=matched,
        coverage=cov,
        retained=n >= cfg.min_tokens and cov >= cfg.coverage_threshold,
        matches=tuple(matches),
    )


def _tokenized(corpus: Iterable[Optional[str]], first_line: int) -> list[tuple[int, Optional[str], list[str]]]:
    # None marks an undecodable line: it yields an empty, rejected record
    return [
        (i, line, text_norm.tokenize(line) if line is not None else [])
        for i, line in enumerate(corpus, first_line)
    ]


def filter_exact(
    corpus: Iterable[Optional[str]],
    lexicon: Lexicon,
    cfg: FilterConfig = FilterConfig(),
    first_line: int = 1,
    stats: Optional[FilterStats] = None,
) -> list[FilterRecord]:
    if cfg.mode != "exact":
        raise ValueError("filter_exact needs mode='exact'")
    words = lexicon.words
    records = []
    seen: set[str] = set()
    occurrences = 0
    for line_no, line, tokens in _tokenized(corpus, first_line):
        occurrences += len(tokens)
        seen.update(tokens)
        matches = [(t, t, 100.0) for t in tokens if t in words]
        records.append(_record(line_no, line, tokens, matches, cfg))
    if stats is not None:
        stats.lines = len(records)
        stats.token_occurrences = occurrences
        stats.unique_tokens = len(seen)
        stats.cache_hits = occurrences - len(seen)
    return records


_worker_tree: Optional[BkTree] = None


def _init_worker(tree: BkTree) -> None:
    global _worker_tree
    _worker_tree = tree
    _worker_tree.evaluations = 0


def _lookup_chunk(args: tuple[list[str], float]) -> tuple[list[Optional[FuzzyMatch]], int]:
    tokens, threshold = args
    assert _worker_tree is not None
    before = _worker_tree.evaluations
    found = [_worker_tree.best_similar(t, threshold) for t in tokens]
    return found, _worker_tree.evaluations - before


def _lookup_all(
    tokens: list[str], tree: BkTree, threshold: float, workers: int
) -> tuple[dict[str, Optional[FuzzyMatch]], int]:
    if workers <= 1 or len(tokens) < 2 * workers:
        before = tree.evaluations
        found = {t: tree.best_similar(t, threshold) for t in tokens}
        return found, tree.evaluations - before
    # contiguous chunks, results reassembled in submission order
    n_chunks = workers * 4
    size = -(-len(tokens) // n_chunks)
    chunks = [tokens[i : i + size] for i in range(0, len(tokens), size)]
    found: dict[str, Optional[FuzzyMatch]] = {}
    evaluations = 0
    with ProcessPoolExecutor(max_workers=workers, initializer=_init_worker, initargs=(tree,)) as pool:
        for chunk, (matches, n) in zip(chunks, pool.map(_lookup_chunk, [(c, threshold) for c in chunks])):
            found.update(zip(chunk, matches))
            evaluations += n
    tree._count(evaluations)
    return found, evaluations


def filter_fuzzy(
    corpus: Iterable[Optional[str]],
    tree: BkTree,
    cfg: FilterConfig = FilterConfig(mode="fuzzy"),
    first_line: int = 1,
    workers: int = 1,
    stats: Optional[FilterStats] = None,
) -> list[FilterRecord]:
    """Fuzzy coverage filter; each distinct token is looked up once per call.

    With ``workers > 1`` the lookups run in a process pool. Results do not
    depend on the worker count.
    """
    if cfg.mode != "fuzzy":
        raise ValueError("filter_fuzzy needs mode='fuzzy'")
    lines = _tokenized(corpus, first_line)
    unique = list(dict.fromkeys(t for _, _, tokens in lines for t in tokens))
    occurrences = sum(len(tokens) for _, _, tokens in lines)
    log.debug("fuzzy filter: %d lines, %d unique tokens", len(lines), len(unique))
    cache, evaluations = _lookup_all(unique, tree, cfg.similarity_threshold, workers)

    records = []
    for line_no, line, tokens in lines:
        matches = []
        for t in tokens:
            m = cache[t]
            if m is not None:
                matches.append((t, m.match, m.similarity))
        records.append(_record(line_no, line, tokens, matches, cfg))
    if stats is not None:
        stats.lines = len(records)
        stats.token_occurrences = occurrences
        stats.unique_tokens = len(unique)
        stats.cache_hits = occurrences - len(unique)
        stats.evaluations = evaluations
    return records


def retained_only(records: Sequence[FilterRecord]) -> list[str]:
    return [r.original for r in records if r.retained]
