import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from streamseg.evaluation import (MERGE, MIXED, SPLIT, Segmentation, compare,
                                  format_error)

from conftest import GOLDEN


def test_identical():
    s = Segmentation.from_text("the quick brown fox")
    r = compare(s, s)
    assert (r.precision, r.recall, r.f1, r.word_accuracy) == (1, 1, 1, 1)
    assert r.errors == []


def test_missing_single_boundary():
    r = compare(Segmentation.from_text("thequick"),
                Segmentation.from_text("the quick"))
    assert r.recall == 0.0
    assert r.precision == 1.0
    assert r.f1 == 0.0
    assert r.word_accuracy == 0.0
    assert [e.kind for e in r.errors] == [MERGE]
    assert r.errors[0].gold == ["the", "quick"]


def test_error_classes():
    gold = Segmentation.from_text("in a great war")
    r = compare(Segmentation.from_text("in a gre at war"), gold)
    assert [(e.kind, e.pred) for e in r.errors] == [(SPLIT, ["gre", "at"])]
    r = compare(Segmentation.from_text("i nagreat war"), gold)
    assert [e.kind for e in r.errors] == [MIXED]
    assert r.word_accuracy == 0.25
    assert r.missing == 2 and r.extra == 1


def test_stream_mismatch():
    with pytest.raises(ValueError):
        compare(Segmentation.from_text("ab"), Segmentation.from_text("a c"))


def test_boundaries_validated():
    with pytest.raises(ValueError):
        Segmentation("abc", frozenset({0}))
    with pytest.raises(ValueError):
        Segmentation("abc", frozenset({3}))


def test_gettysburg_golden_has_three_merges(gettysburg):
    text = (GOLDEN / "gettysburg_k0.76_n175000.txt").read_text()
    words = text.split("\nSEQUENCES")[0].replace("+", "").replace("-", "").split()
    r = compare(Segmentation.from_words(words),
                Segmentation.from_words(gettysburg.words))
    assert [e.kind for e in r.errors] == [MERGE] * 3
    assert sorted("".join(e.pred) for e in r.errors) == ["ina", "ina", "ona"]


def test_format_error():
    r = compare(Segmentation.from_text("we are ina war"),
                Segmentation.from_text("we are in a war"))
    assert format_error(r.errors[0]) == (
        "merge [5, 8)\n"
        "  gold  i n|a\n"
        "  pred  i n a\n"
        "           ^\n")


def test_json_round_trip():
    r = compare(Segmentation.from_text("ab c"), Segmentation.from_text("a bc"))
    d = json.loads(r.to_json())
    assert d["errors"][0]["kind"] == MIXED
    assert d["missing"] == 1 and d["extra"] == 1
    assert "f1: 0.000000" in r.to_text()


@st.composite
def segmentation_pairs(draw):
    n = draw(st.integers(1, 40))
    letters = draw(st.text("abc", min_size=n, max_size=n))
    inner = st.sets(st.integers(1, n - 1)) if n > 1 else st.just(set())
    return (Segmentation(letters, frozenset(draw(inner))),
            Segmentation(letters, frozenset(draw(inner))))


@given(segmentation_pairs())
def test_swap_exchanges_precision_and_recall(pair):
    a, b = pair
    ab, ba = compare(a, b), compare(b, a)
    assert ab.precision == ba.recall
    assert ab.recall == ba.precision
    assert ab.f1 == pytest.approx(ba.f1)
    assert len(ab.errors) == len(ba.errors)


@given(segmentation_pairs())
def test_f1_is_one_iff_equal(pair):
    a, b = pair
    r = compare(a, b)
    assert (r.f1 == 1.0) == (a.boundaries == b.boundaries)
    assert 0.0 <= r.word_accuracy <= 1.0
    assert (r.errors == []) == (a.boundaries == b.boundaries)
