import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from halfflip import rollhash
from halfflip.detect import (
    HalfFlipWitness,
    find_half_flip_brute,
    find_half_flip_fast,
    infinite_halfflip_check,
    swap_halves,
)
from halfflip.words import F2, F3, M_SPEC, Word, apply_morphism, fixed_point_prefix

words = st.integers(1, 5).flatmap(
    lambda s: st.lists(st.integers(0, s - 1), max_size=40).map(lambda xs: Word(bytes(xs), s))
)


def test_swap_halves_examples():
    assert str(swap_halves("0112")) == "1201"
    assert str(swap_halves("0101")) == "0101"
    for bad in ("", "011"):
        with pytest.raises(ValueError):
            swap_halves(bad)


@given(st.lists(st.integers(0, 4), min_size=1, max_size=20))
def test_swap_is_an_involution(half):
    x = Word(bytes(half + half[::-1]), 5)
    assert swap_halves(swap_halves(x)) == x


def test_brute_examples():
    w = find_half_flip_brute("0110", 1, 10)
    assert (w.period, str(w.uv), w.pos_uv, w.pos_vu) == (1, "01", 0, 2)
    assert find_half_flip_brute("012", 1, 10) is None


def test_squares_and_strict_reading():
    w = find_half_flip_brute("0120121", 3, 3)
    assert (w.period, str(w.uv), w.pos_uv, w.pos_vu) == (3, "012012", 0, 0)
    assert find_half_flip_brute("0120121", 3, 3, distinct_halves=True) is None
    assert find_half_flip_brute("000000", 1, 3, distinct_halves=True) is None


def test_prefix_of_m_has_no_short_half_flips():
    assert find_half_flip_brute(fixed_point_prefix(M_SPEC, 2000), 1, 500) is None
    assert find_half_flip_fast(fixed_point_prefix(M_SPEC, 20000), 1, 500) is None


def test_fast_agrees_on_small_example():
    assert find_half_flip_fast("0110", 1, 10) == find_half_flip_brute("0110", 1, 10)


@settings(max_examples=300, deadline=None)
@given(words, st.integers(1, 4), st.integers(0, 25), st.booleans())
def test_fast_matches_brute(w, k, extra, strict):
    P = k + extra
    assert find_half_flip_fast(w, k, P, strict) == find_half_flip_brute(w, k, P, strict)


def test_fast_survives_forced_hash_collisions(monkeypatch):
    monkeypatch.setattr(rollhash, "MODULI", ((7, 3), (5, 2)))
    rng = random.Random(7)
    for _ in range(300):
        s = rng.randint(2, 4)
        w = Word(bytes(rng.randrange(s) for _ in range(rng.randint(0, 40))), s)
        for strict in (False, True):
            assert find_half_flip_fast(w, 1, 20, strict) == find_half_flip_brute(w, 1, 20, strict)


@settings(max_examples=100, deadline=None)
@given(words, st.integers(1, 6), st.integers(0, 20))
def test_monotone_in_min_period(w, k, extra):
    P = k + 1 + extra
    if find_half_flip_brute(w, k, P) is None:
        assert find_half_flip_brute(w, k + 1, P) is None


@given(st.lists(st.integers(0, 3), min_size=1, max_size=8), st.lists(st.integers(0, 3), max_size=8),
       st.lists(st.integers(0, 3), max_size=8))
def test_square_gives_witness(u, left, right):
    w = Word(bytes(left + u + u + right), 4)
    hit = find_half_flip_brute(w, len(u), len(u))
    assert hit is not None and hit.period == len(u)


@given(words, st.integers(1, 3))
def test_witness_holds_in_host(w, k):
    hit = find_half_flip_brute(w, k, 20)
    if hit is not None:
        assert hit.holds_in(w)
        assert hit.period >= k


def test_witness_json_roundtrip():
    hit = find_half_flip_brute("0110", 1, 10)
    data = hit.to_json()
    assert data == {"period": 1, "pos_uv": 0, "pos_vu": 2, "uv": "01"}
    assert HalfFlipWitness.from_json(data, 2) == hit
    with pytest.raises(ValueError):
        HalfFlipWitness(2, Word.parse("01"), 0, 0)


def test_infinite_check_short_periods():
    assert infinite_halfflip_check(M_SPEC, None, 1, 60) is None
    assert infinite_halfflip_check(M_SPEC, F3, 2, 40) is None
    assert infinite_halfflip_check(M_SPEC, F2, 4, 40) is None


def test_infinite_check_finds_small_periods():
    hit = infinite_halfflip_check(M_SPEC, F3, 1, 1)
    assert hit.period == 1 and str(hit.uv) == "00"
    assert infinite_halfflip_check(M_SPEC, F2, 1, 1).period == 1
    # f2 also has 3-half-flips, which is why k=4 is needed there
    assert infinite_halfflip_check(M_SPEC, F2, 3, 3) is not None
    assert infinite_halfflip_check(M_SPEC, F3, 1, 0) is None


def test_infinite_check_consistent_with_prefixes(m_prefix_100k):
    base = m_prefix_100k[:3000]
    assert find_half_flip_fast(apply_morphism(F3, base), 2, 40) is None
    assert find_half_flip_fast(apply_morphism(F2, base), 4, 40) is None
    assert find_half_flip_fast(base, 1, 40) is None
