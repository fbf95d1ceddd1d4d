import math

import pytest
from hypothesis import given, settings, strategies as st

from monovar.decomposition import (
    Profile,
    decompose,
    depth,
    depth_profile,
    render_depths,
    restrictor,
    stabilization,
)
from monovar.words import EMPTY, L, Word, parse_word

W = parse_word("xyxzytszxs")

letters_st = st.sampled_from([L("x"), L("y"), L("z")])
words_st = st.lists(letters_st, max_size=8).map(Word)


def test_running_example_level_0():
    assert decompose(W, 0).render() == "λ·[xyxzy]·t·[szxs]"


def test_running_example_level_1():
    assert decompose(W, 1).render() == "λ·[xyx]·z·[y]·t·[szxs]"


def test_running_example_level_2():
    assert decompose(W, 2).render() == "λ·[x]·y·[x]·z·[y]·t·[szxs]"


def test_running_example_level_3_and_beyond():
    want = "λ·[λ]·x·[λ]·y·[x]·z·[y]·t·[szxs]"
    assert decompose(W, 3).render() == want
    assert decompose(W, 7).render() == want
    assert decompose(W).render() == want
    assert stabilization(W) == 3


# Restrictors of the running example, for every letter, occurrence and
# level group. Levels 3 and 5 both exercise the "3 and beyond" column.

RESTRICTOR_TABLE = {
    "x": {0: (None, None, "t"), 1: (None, None, "t"),
          2: (None, "y", "t"), 3: (None, "y", "t"), 5: (None, "y", "t")},
    "y": {0: (None, None), 1: (None, "z"), 2: (None, "z"),
          3: ("x", "z"), 5: ("x", "z")},
    "z": {0: (None, "t"), 1: (None, "t"), 2: ("y", "t"),
          3: ("y", "t"), 5: ("y", "t")},
    "s": {0: ("t", "t"), 1: ("t", "t"), 2: ("t", "t"),
          3: ("t", "t"), 5: ("t", "t")},
    "t": {0: (None,), 1: ("z",), 2: ("z",), 3: ("z",), 5: ("z",)},
}


def test_restrictor_table_of_running_example():
    checked = 0
    for name, by_level in RESTRICTOR_TABLE.items():
        letter = L(name)
        for k, values in by_level.items():
            for i, want in enumerate(values, start=1):
                got = restrictor(W, letter, i, k)
                want_letter = None if want is None else L(want)
                assert got == want_letter, (name, i, k, got)
                if k != 5:
                    checked += 1
    # four level groups (0, 1, 2, "3 and beyond") over 10 occurrences;
    # the k=5 rows re-check the unbounded group past stabilisation
    assert checked == 40


def test_restrictor_rejects_missing_occurrence():
    with pytest.raises(ValueError):
        restrictor(W, L("t"), 2, 0)
    with pytest.raises(ValueError):
        restrictor(W, L("q"), 1, 0)


def test_depth_profile_of_running_example():
    prof = depth_profile(W)
    assert prof[L("x")] == 3
    assert prof[L("y")] == 2
    assert prof[L("z")] == 1
    assert prof[L("s")] == math.inf
    assert prof[L("t")] == 0
    assert render_depths(W) == "x:3 y:2 z:1 s:inf t:0"


def test_empty_word():
    d = decompose(EMPTY)
    assert d.render() == "λ·[λ]"
    assert stabilization(EMPTY) == 0


def test_single_letter():
    w = parse_word("x")
    assert decompose(w, 0).render() == "λ·[λ]·x·[λ]"
    assert depth(w, L("x")) == 0


def test_square_word_never_splits():
    w = parse_word("xyxy")
    assert stabilization(w) == 0
    assert decompose(w).render() == "λ·[xyxy]"
    assert depth(w, L("x")) == math.inf
    assert depth(w, L("y")) == math.inf


@given(words_st)
def test_decomposition_invariants(w):
    prof = Profile(w)
    assert prof.stab <= max(len(w), 0) + 1
    for k in range(prof.stab + 1):
        d = decompose(w, k)
        d.check()
        assert d.divider_positions[0] == 0


@given(words_st)
def test_divider_monotone_in_level(w):
    prof = Profile(w)
    for k in range(prof.stab):
        assert set(prof.dividers(k)) <= set(prof.dividers(k + 1))


@given(words_st)
def test_depth_divider_duality(w):
    """A letter heads a k-divider exactly when its depth is at most k."""
    prof = Profile(w)
    for letter in prof.con:
        d = prof.depth(letter)
        for k in range(prof.stab + 2):
            assert prof.is_divider(letter, k) == (d <= k)


@given(words_st)
def test_restrictors_agree_below_split_level(w):
    """If the first two occurrences share a k-block they share all lower
    blocks as well."""
    prof = Profile(w)
    for letter in prof.mul:
        for k in range(1, prof.stab + 1):
            if prof.restrictor(letter, 1, k) == prof.restrictor(letter, 2, k):
                for r in range(k):
                    assert prof.restrictor(letter, 1, r) == prof.restrictor(letter, 2, r)


@given(words_st.filter(lambda w: len(w) > 0))
def test_last_divider_is_simple(w):
    prof = Profile(w)
    for k in range(prof.stab + 1):
        last = prof.dividers(k)[-1]
        if last != 0:
            assert prof.word.occ(prof.word[last - 1]) == 1


@given(words_st)
@settings(max_examples=60)
def test_depth_matches_block_membership(w):
    """Depth k means the first two occurrences sit in the same (k-2)-block
    but different (k-1)-blocks."""
    prof = Profile(w)
    for letter in prof.mul:
        d = prof.depth(letter)
        if d == math.inf:
            continue
        k = int(d)
        assert prof.restrictor(letter, 1, k - 1) != prof.restrictor(letter, 2, k - 1)
        if k >= 2:
            assert prof.restrictor(letter, 1, k - 2) == prof.restrictor(letter, 2, k - 2)
