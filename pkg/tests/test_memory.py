import io

import pytest

from streamseg.memory import (HASH_BUCKETS, SequenceMemory, average_word_score,
                              f32, hash_index, passes_threshold)

THRESHOLD = f32(0.4 / 44)
BIAS = f32(4.567)


def test_roots_are_preassigned():
    mem = SequenceMemory()
    assert [r.id for r in mem.roots] == list(range(1, 27))
    a = mem.next_sequence(None, "a")
    assert a.id == 1 and a.length == 1 and a.prev is None
    assert mem.next_sequence(None, "z").id == 26
    assert mem.alloc_count == 26


def test_hash_index_golden():
    # bytes r=114, e=101, length 1, id 5 -> 0x00 0x05 little-endian:
    # h = ((((114*16 + 101)*16 + 1)*16 + 5)*16 + 0) = 7885136, no high nibble
    # 7885136 mod 12577 = 11934
    mem = SequenceMemory()
    e = mem.root("e")
    assert e.id == 5
    assert hash_index(e, "r") == 11934
    assert hash_index(e, "r") == hash_index(e, "r")


def test_hash_index_folds_high_bits():
    mem = SequenceMemory()
    seq = mem.root("z")
    for ch in "zzzzzz":
        seq = mem.next_sequence(seq, ch)
    seq.id = 0xBEEF
    for ch in "az":
        assert 0 <= hash_index(seq, ch) < HASH_BUCKETS


def test_next_sequence_builds_them():
    mem = SequenceMemory()
    the = None
    for ch in "the":
        the = mem.next_sequence(the, ch)
    them = mem.next_sequence(the, "m")
    assert them.letters == "them"
    assert them.length == 4
    assert them.prev is the


def test_lookup_is_idempotent_and_counter_free():
    mem = SequenceMemory()
    mem.event_count = 7
    t = mem.root("t")
    a = mem.next_sequence(t, "h")
    b = mem.next_sequence(t, "h")
    assert a is b
    assert a.id == 27 and mem.alloc_count == 27
    assert (a.in_count, a.out_count, a.succ_count, a.accum_scores) == (0, 0, 0, 0.0)
    assert a.create_count == 7
    assert mem.find("th") is a
    assert mem.find("tx") is None


@pytest.mark.parametrize("bad", ["A", "1", "", "ab", " "])
def test_rejects_non_letters(bad):
    mem = SequenceMemory()
    with pytest.raises(ValueError):
        mem.next_sequence(mem.root("a"), bad)
    with pytest.raises(ValueError):
        mem.next_sequence(None, bad)


def _record(in_count, create_count):
    mem = SequenceMemory()
    rec = mem.next_sequence(mem.root("a"), "b")
    rec.in_count = in_count
    rec.create_count = create_count
    return rec


def test_passes_threshold_example():
    # (10 - 4.567) / 500 = 0.010866 >= 0.4/44 = 0.009091
    assert passes_threshold(_record(10, 0), 500, THRESHOLD, BIAS)


def test_zero_denominator_fails():
    assert not passes_threshold(_record(1, 42), 42, THRESHOLD, BIAS)
    assert not passes_threshold(_record(1000, 42), 42, THRESHOLD, BIAS)


def test_below_bias_fails():
    assert not passes_threshold(_record(4, 0), 5, THRESHOLD, BIAS)


def test_threshold_boundary_is_inclusive():
    rec = _record(5, 0)
    t = f32(f32(5 - BIAS) / 10)
    assert passes_threshold(rec, 10, t, BIAS)
    assert not passes_threshold(rec, 11, t, BIAS)


@pytest.mark.parametrize("accum, n, expected", [
    (0.0, 3, 0.0),
    (8.0, 8, 1.0),
    (4.0, 8, 0.5),
])
def test_average_word_score(accum, n, expected):
    rec = _record(n, 0)
    rec.accum_scores = accum
    assert average_word_score(rec) == expected


def test_dump_and_invariants():
    mem = SequenceMemory()
    th = mem.next_sequence(mem.root("t"), "h")
    mem.root("t").in_count = mem.root("t").out_count = 3
    mem.root("t").succ_count = 2
    th.in_count, th.out_count = 4, 2
    assert mem.check_invariants() == []
    buf = io.StringIO()
    mem.dump(buf)
    lines = buf.getvalue().splitlines()
    assert len(lines) == 27
    assert lines[-1].split("\t") == ["27", "th", "0", "4", "2", "0", "0.0"]

    mem.root("t").succ_count = 1
    assert any("succ_count" in p for p in mem.check_invariants())


def test_bucket_histogram_counts_non_roots():
    mem = SequenceMemory()
    for a in "abc":
        for b in "xyz":
            mem.next_sequence(mem.root(a), b)
    assert sum(mem.bucket_histogram()) == 9
