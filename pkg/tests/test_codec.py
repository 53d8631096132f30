from itertools import product

import pytest
from hypothesis import given
import hypothesis.strategies as st

from twodel.codec import (MARKER, chunk_size, decode_codeword, decode_payload, encode_message,
                          encode_payload, frame, framed_length, layout, redundancy_report,
                          rep_decode, rep_encode, unframe)
from twodel.core import delete, subsequences
from twodel.errors import DecodeFailure
from twodel.regular import RegularCodebook, is_regular
from twodel.sketch import CodeParams

from conftest import bitstrings

# measured once: N - n at n = 1024 is 165 (framed s1) + 3 * 121 (s2)
REDUNDANCY_1024 = 528


def test_repetition_examples():
    assert rep_encode("01") == "000111"
    assert rep_decode(delete("000111", {1, 4}), 2) == "01"


@pytest.mark.parametrize("n", range(1, 9))
def test_repetition_exhaustive(n):
    for t in product("01", repeat=n):
        s = "".join(t)
        word = rep_encode(s)
        received = {word} | subsequences(word, 1) | subsequences(word, 2)
        assert all(rep_decode(r, n) == s for r in received)


def test_repetition_rejects_three_deletions():
    with pytest.raises(DecodeFailure):
        rep_decode("000", 2)


@given(bitstrings(1, 300))
def test_frame_round_trip(bits):
    framed = frame(bits)
    assert len(framed) == framed_length(len(bits))
    assert framed.startswith(MARKER)
    assert unframe(framed, len(bits)) == bits


def test_framed_length_never_shrinks():
    lengths = [framed_length(r) for r in range(1, 400)]
    assert all(a <= b for a, b in zip(lengths, lengths[1:]))


@given(st.integers(100, 260), st.data())
def test_framed_sketch_is_regular(raw_len, data):
    bits = data.draw(bitstrings(raw_len, raw_len))
    assert chunk_size(raw_len) <= CodeParams(framed_length(raw_len)).regularity_window
    assert is_regular(frame(bits))


def test_unframe_rejects_damage():
    framed = frame("1" * 40)
    with pytest.raises(DecodeFailure):
        unframe("1" + framed[1:], 40)
    with pytest.raises(DecodeFailure):
        unframe(framed[:-1], 40)


def test_layout_at_1024():
    assert layout(1024).redundancy == REDUNDANCY_1024
    assert len(encode_message(0, 1024)) == 1024 + REDUNDANCY_1024


def test_redundancy_grows_with_n():
    red = [layout(n).redundancy for n in range(4, 3000)]
    assert all(a <= b for a, b in zip(red, red[1:]))


def test_report_is_deterministic():
    ns = [2 ** e for e in range(10, 21, 2)]
    assert redundancy_report(ns) == redundancy_report(ns)


@pytest.mark.parametrize("n", [16, 64, 200])
def test_zero_deletions(n, rng):
    size = RegularCodebook.for_params(CodeParams(n)).size
    for m in (0, size - 1, rng.randrange(size)):
        assert decode_codeword(encode_message(m, n).bits, n) == m


@pytest.mark.parametrize("n", [8, 64, 300])
def test_random_deletions(n, rng):
    size = RegularCodebook.for_params(CodeParams(n)).size
    for _ in range(60):
        m = rng.randrange(size)
        word = encode_message(m, n).bits
        k = rng.randint(1, 2)
        assert decode_codeword(delete(word, rng.sample(range(1, len(word) + 1), k)), n) == m


def test_deletions_at_segment_borders():
    n = 64
    word = encode_message(987654321, n)
    lay = layout(n)
    borders = [1, n, n + 1, n + lay.len1, n + lay.len1 + 1, lay.total]
    for i in borders:
        for j in borders:
            if i < j:
                assert decode_payload(delete(word.bits, {i, j}), n) == word.payload


def test_three_deletions_rejected():
    word = encode_message(5, 64).bits
    with pytest.raises(DecodeFailure) as info:
        decode_codeword(delete(word, {1, 2, 3}), 64)
    assert info.value.reason == "bad-length"


def test_full_length_non_codeword():
    word = encode_message(5, 64).bits
    flipped = word[:10] + ("1" if word[10] == "0" else "0") + word[11:]
    with pytest.raises(DecodeFailure):
        decode_codeword(flipped, 64)


def test_message_range():
    size = RegularCodebook.for_params(CodeParams(64)).size
    with pytest.raises(ValueError):
        encode_message(size, 64)


def test_payload_without_message_step():
    x = "0011" * 16
    word = encode_payload(x)
    assert decode_payload(delete(word.bits, {3, 70}), 64) == x
