"""Corpus-level WER/CER and ROUGE-1/2/L/Lsum.

Text is normalized with :mod:`komori.text_norm` before scoring unless
``raw=True``, in which case words are whitespace-split and characters are
taken as-is.

WER and CER are corpus totals: summed edit distance over summed reference
length. ROUGE scores are per-pair F1 averaged over the corpus.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import asdict, dataclass
from typing import Iterable, Optional, Sequence

from komori import text_norm
from komori.editdist import levenshtein
from komori.errors import EmptyReference, LengthMismatch

ALL_METRICS = ("wer", "cer", "rouge1", "rouge2", "rougeL", "rougeLsum")


@dataclass
class EvalScores:
    wer: Optional[float] = None
    cer: Optional[float] = None
    rouge1: Optional[float] = None
    rouge2: Optional[float] = None
    rougeL: Optional[float] = None
    rougeLsum: Optional[float] = None
    n_pairs: int = 0

    def to_dict(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}


def _check(refs: Sequence[str], hyps: Sequence[str]) -> None:
    if len(refs) != len(hyps):
        raise LengthMismatch(len(refs), len(hyps))


def _words(text: str, raw: bool) -> list[str]:
    return text.split() if raw else text_norm.tokenize(text)


def _chars(text: str, raw: bool) -> str:
    return text if raw else text_norm.normalize(text).normalized


def wer(refs: Sequence[str], hyps: Sequence[str], raw: bool = False) -> float:
    _check(refs, hyps)
    errors = total = 0
    for i, (ref, hyp) in enumerate(zip(refs, hyps)):
        r = _words(ref, raw)
        if not r:
            raise EmptyReference(i)
        errors += levenshtein(r, _words(hyp, raw))
        total += len(r)
    return errors / total if total else 0.0


def cer(refs: Sequence[str], hyps: Sequence[str], raw: bool = False) -> float:
    _check(refs, hyps)
    errors = total = 0
    for i, (ref, hyp) in enumerate(zip(refs, hyps)):
        r = _chars(ref, raw)
        if not r:
            raise EmptyReference(i)
        errors += levenshtein(r, _chars(hyp, raw))
        total += len(r)
    return errors / total if total else 0.0


def _f1(overlap: int, n_hyp: int, n_ref: int) -> float:
    precision = overlap / n_hyp if n_hyp else 0.0
    recall = overlap / n_ref if n_ref else 0.0
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def _ngrams(tokens: list[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def _rouge_n_pair(ref: list[str], hyp: list[str], n: int) -> float:
    ref_grams = _ngrams(ref, n)
    hyp_grams = _ngrams(hyp, n)
    overlap = sum((ref_grams & hyp_grams).values())
    return _f1(overlap, sum(hyp_grams.values()), sum(ref_grams.values()))


def _lcs_table(a: list[str], b: list[str]) -> list[list[int]]:
    table = [[0] * (len(b) + 1) for _ in range(len(a) + 1)]
    for i, x in enumerate(a, 1):
        row, prev = table[i], table[i - 1]
        for j, y in enumerate(b, 1):
            row[j] = prev[j - 1] + 1 if x == y else max(prev[j], row[j - 1])
    return table


def _lcs_indices(a: list[str], b: list[str]) -> list[int]:
    """Positions in ``a`` of one longest common subsequence with ``b``."""
    table = _lcs_table(a, b)
    i, j = len(a), len(b)
    picked = []
    while i > 0 and j > 0:
        if a[i - 1] == b[j - 1]:
            picked.append(i - 1)
            i -= 1
            j -= 1
        elif table[i - 1][j] >= table[i][j - 1]:
            i -= 1
        else:
            j -= 1
    return picked[::-1]


def _rouge_l_pair(ref: list[str], hyp: list[str]) -> float:
    lcs = _lcs_table(ref, hyp)[-1][-1] if ref and hyp else 0
    return _f1(lcs, len(hyp), len(ref))


def _rouge_lsum_pair(ref_segments: list[list[str]], hyp_segments: list[list[str]]) -> float:
    # union LCS per reference segment; token hits clipped by corpus counts
    ref_counts = Counter(t for seg in ref_segments for t in seg)
    hyp_counts = Counter(t for seg in hyp_segments for t in seg)
    n_ref = sum(ref_counts.values())
    n_hyp = sum(hyp_counts.values())
    hits = 0
    for seg in ref_segments:
        union: set[int] = set()
        for hyp_seg in hyp_segments:
            union.update(_lcs_indices(seg, hyp_seg))
        for idx in sorted(union):
            token = seg[idx]
            if ref_counts[token] > 0 and hyp_counts[token] > 0:
                hits += 1
                ref_counts[token] -= 1
                hyp_counts[token] -= 1
    return _f1(hits, n_hyp, n_ref)


def _mean(values: Iterable[float]) -> float:
    values = list(values)
    return sum(values) / len(values) if values else 0.0


def rouge_n(refs: Sequence[str], hyps: Sequence[str], n: int, raw: bool = False) -> float:
    if n < 1:
        raise ValueError("n must be >= 1")
    _check(refs, hyps)
    return _mean(_rouge_n_pair(_words(r, raw), _words(h, raw), n) for r, h in zip(refs, hyps))


def rouge_l(refs: Sequence[str], hyps: Sequence[str], raw: bool = False) -> float:
    _check(refs, hyps)
    return _mean(_rouge_l_pair(_words(r, raw), _words(h, raw)) for r, h in zip(refs, hyps))


def _segments(text: str, raw: bool) -> list[list[str]]:
    segs = (_words(part, raw) for part in text.split("\n"))
    return [s for s in segs if s]


def rouge_lsum(refs: Sequence[str], hyps: Sequence[str], raw: bool = False) -> float:
    """ROUGE-L over newline-separated segments using union LCS."""
    _check(refs, hyps)
    return _mean(_rouge_lsum_pair(_segments(r, raw), _segments(h, raw)) for r, h in zip(refs, hyps))


def evaluate(
    refs: Sequence[str],
    hyps: Sequence[str],
    metrics: Iterable[str] = ALL_METRICS,
    raw: bool = False,
) -> EvalScores:
    metrics = list(metrics)
    unknown = set(metrics) - set(ALL_METRICS)
    if unknown:
        raise ValueError(f"unknown metrics: {', '.join(sorted(unknown))}")
    _check(refs, hyps)
    scores = EvalScores(n_pairs=len(refs))
    if "wer" in metrics:
        scores.wer = wer(refs, hyps, raw)
    if "cer" in metrics:
        scores.cer = cer(refs, hyps, raw)
    if "rouge1" in metrics:
        scores.rouge1 = rouge_n(refs, hyps, 1, raw)
    if "rouge2" in metrics:
        scores.rouge2 = rouge_n(refs, hyps, 2, raw)
    if "rougeL" in metrics:
        scores.rougeL = rouge_l(refs, hyps, raw)
    if "rougeLsum" in metrics:
        scores.rougeLsum = rouge_lsum(refs, hyps, raw)
    return scores
