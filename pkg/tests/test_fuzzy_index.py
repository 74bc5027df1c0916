import pickle
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from komori.editdist import levenshtein
from komori.errors import EmptyLexicon
from komori.fuzzy_index import BkTree, FuzzyMatch, best_similar, build, query_radius
from komori.lexicon import Lexicon
from oracles import best_scan, lev_oracle, radius_scan


def test_build_single_word():
    assert len(build(Lexicon("zdj", frozenset({"mimi"})))) == 1


def test_build_small_all_retrievable():
    tree = build(["a", "b", "ab"])
    assert len(tree) == 3
    assert {m.match for m in query_radius(tree, "a", 2)} == {"a", "b", "ab"}


def test_duplicate_insert_is_noop():
    tree = build(["mimi"])
    tree.add("mimi")
    assert len(tree) == 1


def test_empty_lexicon():
    with pytest.raises(EmptyLexicon):
        build(Lexicon("zdj"))


def test_radius_examples():
    tree = build(["mimi", "mbuzi"])
    assert query_radius(tree, "mimi", 0) == {FuzzyMatch("mimi", "mimi", 0, 100.0)}
    assert query_radius(tree, "xyz", 0) == set()
    assert {(m.match, m.raw_distance) for m in query_radius(tree, "puzi", 2)} == {("mbuzi", 2)}


def test_best_similar_examples():
    assert best_similar(build(["mimi"]), "mimi", 80).similarity == 100.0
    assert best_similar(build(["mbuzi"]), "puzi", 80) is None
    m = best_similar(build(["abce", "abcf"]), "abcd", 75)
    assert (m.match, m.similarity) == ("abce", 75.0)


def test_best_similar_prefers_shorter_on_tie():
    # both are one edit from the 6-letter query: similarity 100 - 100/6 each
    tree = build(["abcdxf", "abcde"])
    m = best_similar(tree, "abcdef", 80)
    assert m.match == "abcde"
    assert m.similarity == pytest.approx(100 - 100 / 6)


def test_best_similar_validation():
    tree = build(["mimi"])
    with pytest.raises(ValueError):
        best_similar(tree, "", 80)
    with pytest.raises(ValueError):
        best_similar(tree, "mimi", 101)
    with pytest.raises(ValueError):
        query_radius(tree, "mimi", -1)


def test_zero_threshold_returns_global_best():
    tree = build(["zzzzzzzz", "abq"])
    assert best_similar(tree, "abc", 0).match == "abq"


def test_metric_tree_property():
    rng = random.Random(2)
    words = {"".join(rng.choice("abcde") for _ in range(rng.randint(1, 8))) for _ in range(300)}
    tree = build(words)
    seen = 0

    def walk(node):
        nonlocal seen
        seen += 1
        for d, child in node.children.items():
            stack = [child]
            while stack:
                n = stack.pop()
                assert levenshtein(n.word, node.word) == d
                stack.extend(n.children.values())
            walk(child)

    walk(tree._root)
    assert seen == len(words)


def test_insertion_order_does_not_change_shape():
    words = ["mimi", "wewe", "yai", "djwai", "dzundzu", "mbuzi", "puzi"]
    a = pickle.dumps(BkTree(words)._root)
    b = pickle.dumps(BkTree(list(reversed(words)))._root)
    assert a == b


def test_pickle_roundtrip_keeps_results():
    tree = build(["mimi", "wewe", "mbuzi"])
    clone = pickle.loads(pickle.dumps(tree))
    assert clone.query_radius("mbuz", 1) == tree.query_radius("mbuz", 1)


def test_evaluation_counter_prunes():
    rng = random.Random(4)
    words = {"".join(rng.choice("abcdefghij") for _ in range(rng.randint(3, 9))) for _ in range(2000)}
    tree = build(words)
    tree.query_radius("abcdef", 1)
    assert 0 < tree.evaluations < len(words)


word = st.text(alphabet="abcde", min_size=1, max_size=8)


@given(st.lists(word, min_size=1, max_size=60), word, st.integers(0, 5))
@settings(max_examples=300)
def test_radius_query_matches_linear_scan(words, query, radius):
    tree = build(words)
    distances = {w: lev_oracle(query, w) for w in set(words)}
    got = {(m.match, m.raw_distance) for m in tree.query_radius(query, radius)}
    assert got == radius_scan(distances, radius)


@given(
    st.lists(word, min_size=1, max_size=60),
    word,
    st.one_of(st.integers(0, 100), st.floats(0, 100, allow_nan=False)),
)
@settings(max_examples=300)
def test_best_similar_matches_brute_force(words, query, threshold):
    tree = build(words)
    distances = {w: lev_oracle(query, w) for w in set(words)}
    expected = best_scan(query, distances, threshold)
    got = tree.best_similar(query, threshold)
    assert (None if got is None else (got.match, got.raw_distance)) == expected
