import math
import random
from pathlib import Path

import pytest

from komori.editdist import normalized_distance
from komori.errors import NoComparablePairs
from komori.lexicon import ConceptEntry, ConceptList, load_concept_list, read_concept_list
from komori.lexstat import concept_distance, distance_matrix, language_distance
import synth

FIXTURES = Path(__file__).parent / "fixtures"


def test_concept_distance_min_over_variants():
    entry = ConceptEntry("egg", {"a": ("djwai", "dzundzu"), "b": ("dzundzu",)})
    assert concept_distance(entry, "a", "b") == 0.0


def test_concept_distance_missing_side():
    entry = ConceptEntry("egg", {"a": (), "b": ("yai",)})
    assert concept_distance(entry, "a", "b") is None


def test_concept_distance_single_pair():
    entry = ConceptEntry("x", {"a": ("abc",), "b": ("abd",)})
    assert concept_distance(entry, "a", "b") == pytest.approx(100 / 3, abs=1e-9)


def test_language_distance_skips_missing():
    # abcde/abcxx -> 2/5 = 40, abcde/abcdx -> 1/5 = 20, third concept missing on b
    cl = load_concept_list(
        [["c1", "abcde", "abcxx"], ["c2", "abcde", "abcdx"], ["c3", "abc", ""]], ["a", "b"]
    )
    value, support = language_distance(cl, "a", "b")
    assert value == pytest.approx(30.0, abs=1e-12)
    assert support == 2


def test_identical_lists_are_at_zero():
    cl = load_concept_list([[f"c{i}", w, w] for i, w in enumerate(["mimi", "wewe", "yai"])], ["a", "b"])
    assert language_distance(cl, "a", "b") == (0.0, 3)
    m = distance_matrix(cl)
    assert m.values[0][1] == m.values[1][0] == 0.0


def test_no_comparable_pairs():
    cl = load_concept_list([["c1", "mimi", ""], ["c2", "wewe", ""]], ["a", "b"])
    with pytest.raises(NoComparablePairs) as err:
        distance_matrix(cl)
    assert set(err.value.pair) == {"a", "b"}


def test_toy_fixture_matches_hand_computation():
    cl = read_concept_list(FIXTURES / "toy_swadesh.tsv")
    m = distance_matrix(cl)
    assert m.get("sw", "zdj") == pytest.approx(80 / 3, abs=1e-12)
    assert m.get("sw", "ndz") == pytest.approx(37.0, abs=1e-12)
    assert m.get("zdj", "ndz") == pytest.approx(25 / 3, abs=1e-12)
    assert m.pair_support[0][1] == 3 and m.pair_support[0][2] == 5 and m.pair_support[1][2] == 3
    assert m.to_tsv() == (FIXTURES / "toy_matrix.tsv").read_text(encoding="utf-8")


def test_matrix_properties_random():
    rng = random.Random(11)
    for _ in range(100):
        cl = synth.concept_list(rng)
        m = distance_matrix(cl)
        n = len(m.languages)
        for i in range(n):
            assert m.values[i][i] == 0.0
            for j in range(n):
                assert m.values[i][j] == m.values[j][i]
                assert m.pair_support[i][j] == m.pair_support[j][i]
                assert 0.0 <= m.values[i][j] <= 100.0


def imputed_mean(cl: ConceptList, a: str, b: str) -> float:
    """Mean over all concepts after filling each missing pair with the mean of present pairs."""
    present = []
    for e in cl.entries:
        fa, fb = e.variants(a), e.variants(b)
        if fa and fb:
            present.append(min(normalized_distance(x, y) for x in fa for y in fb))
    fill = sum(present) / len(present)
    full = present + [fill] * (len(cl.entries) - len(present))
    return sum(full) / len(full)


def test_imputation_equivalence():
    rng = random.Random(5)
    for _ in range(100):
        cl = synth.concept_list(rng, p_missing=0.4)
        for i, a in enumerate(cl.languages):
            for b in cl.languages[:i]:
                value, _ = language_distance(cl, a, b)
                assert math.isclose(value, imputed_mean(cl, a, b), abs_tol=1e-9)


def test_removing_concepts_never_increases_support():
    rng = random.Random(8)
    cl = synth.concept_list(rng)
    full = distance_matrix(cl)
    smaller = ConceptList(cl.name, cl.languages, cl.entries[1:])
    reduced = distance_matrix(smaller)
    for i in range(len(cl.languages)):
        for j in range(len(cl.languages)):
            assert reduced.pair_support[i][j] <= full.pair_support[i][j]


def test_permutation_invariance():
    rng = random.Random(9)
    cl = synth.concept_list(rng)
    m = distance_matrix(cl)
    entries = list(cl.entries)
    rng.shuffle(entries)
    langs = list(cl.languages)
    rng.shuffle(langs)
    shuffled = distance_matrix(ConceptList(cl.name, tuple(langs), tuple(entries)))
    for a in cl.languages:
        for b in cl.languages:
            assert shuffled.get(a, b) == m.get(a, b)
