import random
from itertools import product

import pytest
from hypothesis import given
import hypothesis.strategies as st

from twodel.regular import (RegularCodebook, capacity_threshold, count_no_00, fibonacci, is_regular,
                            q_size, rank_q, reg_dec, reg_enc, regularity_threshold, unrank_q)
from twodel.sketch import CodeParams

from conftest import bitstrings

# smallest n0 with M >= 2^(n-1) on [n0, 2048], evaluated once and frozen
CAPACITY_N0 = 2


def all_strings(m):
    return ["".join(t) for t in product("01", repeat=m)]


def naive_regular(x, d):
    w = regularity_threshold(len(x), d)
    if w > len(x):
        return True
    return all("00" in x[i:i + w] and "11" in x[i:i + w] for i in range(len(x) - w + 1))


def test_count_no_00_small_cases():
    assert count_no_00(1) == 2
    assert count_no_00(2) == 3
    assert count_no_00(5) == 13


@pytest.mark.parametrize("m", range(1, 15))
def test_count_no_00_is_fibonacci(m):
    assert count_no_00(m) == sum("00" not in s for s in all_strings(m)) == fibonacci(m + 2)


@pytest.mark.parametrize("delta", range(1, 14))
def test_q_size_by_filtering(delta):
    assert q_size(delta) == sum("00" in s and "11" in s for s in all_strings(delta))


@pytest.mark.parametrize("delta", [4, 5, 8, 10])
def test_q_is_lexicographic(delta):
    q = [s for s in all_strings(delta) if "00" in s and "11" in s]
    assert [unrank_q(i, delta) for i in range(len(q))] == q
    assert [rank_q(s) for s in q] == list(range(len(q)))


def test_rank_q_rejects_non_members():
    with pytest.raises(ValueError):
        rank_q("010101")
    with pytest.raises(ValueError):
        unrank_q(q_size(6), 6)


def test_alternating_is_not_regular():
    x = "01" * 100
    assert regularity_threshold(len(x)) < len(x)
    assert not is_regular(x)


def test_short_strings_are_vacuously_regular():
    assert is_regular("01" * 10)
    assert is_regular("0" * 20)


@given(bitstrings(2, 60), st.integers(1, 3))
def test_is_regular_matches_window_scan(x, d):
    assert is_regular(x, d) == naive_regular(x, d)


def test_dense_pattern_string_is_regular():
    x = "0011" * 64
    assert is_regular(x, 1)
    assert not is_regular(x[:60] + "01" * 30 + x[120:], 1)


def test_index_zero():
    p = CodeParams(512)
    book = RegularCodebook.for_params(p)
    assert reg_enc(0, p) == unrank_q(0, book.delta) * book.m + "0" * book.residual_bits


def test_codebook_shape():
    book = RegularCodebook.for_params(CodeParams(512))
    assert book.delta == 31
    assert book.m == 512 // 31
    assert book.size == book.q ** book.m * 2 ** (512 - book.m * 31)


@pytest.mark.parametrize("n", [3, 16, 100, 512])
def test_boundary_indices(n):
    size = RegularCodebook.for_params(CodeParams(n)).size
    for i in (0, 1, size - 1):
        assert reg_dec(reg_enc(i, n), n) == i
    with pytest.raises(ValueError):
        reg_enc(size, n)
    with pytest.raises(ValueError):
        reg_enc(-1, n)


@given(st.data())
def test_round_trip_and_regular(data):
    n = data.draw(st.sampled_from([64, 200, 512, 1024]))
    size = RegularCodebook.for_params(CodeParams(n)).size
    i = data.draw(st.integers(0, size - 1))
    x = reg_enc(i, n)
    assert len(x) == n
    assert is_regular(x)
    assert reg_dec(x, n) == i


def test_alternating_block_not_in_image():
    p = CodeParams(512)
    book = RegularCodebook.for_params(p)
    x = reg_enc(12345, p)
    bad = ("01" * book.delta)[:book.delta] + x[book.delta:]
    with pytest.raises(ValueError):
        reg_dec(bad, p)


def test_identity_codebook():
    assert RegularCodebook.for_params(CodeParams(2)).identity
    assert reg_enc(3, 2) == "11"
    assert reg_dec("10", 2) == 2


def test_capacity():
    assert capacity_threshold(7, 2048) == CAPACITY_N0
    for n in random.Random(1).sample(range(2, 6000), 40):
        assert RegularCodebook.for_params(CodeParams(n)).size >= 2 ** (n - 1)
