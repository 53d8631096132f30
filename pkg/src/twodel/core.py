"""Bitstring and rank-sequence primitives.

A bitstring is a plain ``str`` over ``'0'``/``'1'``; position 1 is the
leftmost character. All formulas in this package use 1-indexed positions.
The virtual boundary bits ``x_0 = 0`` and ``x_{n+1} = 1`` are never stored
and only appear inside :func:`rank_sequence`.
"""

from collections.abc import Iterable

import numpy as np

_VALID = frozenset("01")


def as_bits(x) -> str:
    """Normalise ``x`` (str, bytes, or a sequence of 0/1 ints) to a bitstring."""
    if isinstance(x, str):
        s = x
    elif isinstance(x, (bytes, bytearray)):
        s = x.decode("ascii")
    else:
        s = "".join("1" if int(b) else "0" for b in _checked_ints(x))
    if not _VALID.issuperset(s):
        raise ValueError(f"not a bitstring: {s[:40]!r}")
    return s


def _checked_ints(seq):
    for b in seq:
        if int(b) not in (0, 1):
            raise ValueError(f"bit out of range: {b!r}")
        yield b


def to_array(x: str) -> np.ndarray:
    """Bitstring as a ``uint8`` array of 0/1."""
    return np.frombuffer(x.encode("ascii"), dtype=np.uint8) - 48


def from_array(a) -> str:
    return (np.asarray(a, dtype=np.uint8) + 48).tobytes().decode("ascii")


def complement(x: str) -> str:
    return x.translate(_FLIP)


_FLIP = str.maketrans("01", "10")


def rank_sequence(x: str) -> np.ndarray:
    """Ranks ``r_0..r_{n+1}`` of ``x`` with boundary bits 0 (left) and 1 (right).

    >>> rank_sequence("001000111010").tolist()
    [0, 0, 0, 1, 2, 2, 2, 3, 3, 3, 4, 5, 6, 7]
    """
    aug = np.frombuffer(("0" + x + "1").encode("ascii"), dtype=np.uint8)
    ranks = np.zeros(len(aug), dtype=np.int64)
    np.cumsum(aug[1:] != aug[:-1], out=ranks[1:])
    return ranks


def from_rank_sequence(ranks) -> str:
    """Inverse of :func:`rank_sequence`: rebuild ``x`` from ``r_0..r_{n+1}``."""
    r = np.asarray(ranks, dtype=np.int64)
    if len(r) < 2 or r[0] != 0:
        raise ValueError("rank sequence must start with r_0 = 0")
    steps = np.diff(r)
    if np.any((steps != 0) & (steps != 1)):
        raise ValueError("consecutive ranks must differ by 0 or 1")
    # the bit at index i equals r_i mod 2 since x_0 = 0
    bits = r % 2
    if bits[-1] != 1:
        raise ValueError("final rank must be odd (boundary bit is 1)")
    return from_array(bits[1:-1])


def run_count(x: str) -> int:
    """Total run count ``r_{n+1}`` under the boundary convention."""
    if not x:
        return 1
    # occurrences of "01" (or "10") never overlap, so str.count is exact
    return x.count("01") + x.count("10") + (x[0] == "1") + (x[-1] == "0")


def delete(x: str, positions: Iterable[int]) -> str:
    """Remove the given 1-indexed positions from ``x``."""
    pos = sorted(set(positions))
    if pos and (pos[0] < 1 or pos[-1] > len(x)):
        raise IndexError(f"deletion positions {pos} out of range for length {len(x)}")
    out = []
    prev = 0
    for p in pos:
        out.append(x[prev:p - 1])
        prev = p
    out.append(x[prev:])
    return "".join(out)


def insert(y: str, position: int, bit) -> str:
    """Insert ``bit`` so that it lands at 1-indexed ``position`` of the result."""
    if not 1 <= position <= len(y) + 1:
        raise IndexError(f"insert position {position} out of range for length {len(y)}")
    b = "1" if bit in (1, "1", True) else "0"
    return y[:position - 1] + b + y[position - 1:]


def _single_supersequences(y: str) -> set:
    out = set()
    for g in range(len(y) + 1):
        # inserting b right after a b gives the same string as one slot earlier
        if g == 0 or y[g - 1] == "1":
            out.add(y[:g] + "0" + y[g:])
        if g == 0 or y[g - 1] == "0":
            out.add(y[:g] + "1" + y[g:])
    return out


def supersequences(y: str, k: int) -> set:
    """All strings of length ``len(y) + k`` obtainable from ``y`` by ``k`` insertions."""
    if k < 0:
        raise ValueError("k must be non-negative")
    current = {y}
    for _ in range(k):
        nxt = set()
        for s in current:
            nxt |= _single_supersequences(s)
        current = nxt
    return current


def subsequences(x: str, k: int) -> set:
    """All distinct results of deleting exactly ``k`` bits from ``x``."""
    current = {x}
    for _ in range(k):
        nxt = set()
        for s in current:
            # deleting any bit of a run gives the same string
            for i in range(len(s)):
                if i == 0 or s[i] != s[i - 1]:
                    nxt.add(s[:i] + s[i + 1:])
        current = nxt
    return current


def is_subsequence(y: str, x: str) -> bool:
    """Whether ``y`` can be obtained from ``x`` by deletions."""
    it = iter(x)
    return all(c in it for c in y)
