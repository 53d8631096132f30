"""Regular strings and a bijection from integers into a large set of them.

A string of length ``n`` is regular when every substring of length at least
``d * log2(n)`` contains both ``00`` and ``11``. :func:`reg_enc` writes an
index in mixed radix: ``m`` digits base ``|Q|`` (each spelled as a
length-``Δ`` member of ``Q``, the strings holding both ``00`` and ``11``)
followed by ``n - mΔ`` plain bits.
"""

from dataclasses import dataclass
from functools import lru_cache
from math import ceil, floor, log2

import numpy as np

from .core import as_bits, to_array
from .sketch import DEFAULT_D, CodeParams


def regularity_threshold(n: int, d: int = DEFAULT_D) -> int:
    """Shortest substring length that must contain both patterns."""
    return ceil(d * log2(n)) if n > 1 else 1


def _covers(hits: np.ndarray, n: int, w: int) -> bool:
    # hits are 1-indexed starts p of a pattern occupying p, p+1; every
    # window [s, s+w-1] needs some p in [s, s+w-2]
    if len(hits) == 0:
        return False
    if hits[0] > w - 1 or hits[-1] < n - w + 1:
        return False
    return bool(np.all(np.diff(hits) <= w - 1))


def is_regular(x: str, d: int = DEFAULT_D) -> bool:
    """Whether every substring of ``x`` of length ``>= d*log2(len(x))`` has 00 and 11."""
    x = as_bits(x)
    n = len(x)
    w = regularity_threshold(n, d)
    if w > n:
        return True
    a = to_array(x)
    pair = a[:-1] + a[1:]
    return (_covers(np.flatnonzero(pair == 0) + 1, n, w)
            and _covers(np.flatnonzero(pair == 2) + 1, n, w))


def count_no_00(m: int) -> int:
    """Length-``m`` strings with no two adjacent 0s; equals ``F_{m+2}``."""
    if m < 1:
        raise ValueError("m must be at least 1")
    a, b = 2, 3  # m = 1, m = 2
    for _ in range(m - 1):
        a, b = b, a + b
    return a


def fibonacci(i: int) -> int:
    """``F_i`` with ``F_1 = F_2 = 1``."""
    a, b = 0, 1
    for _ in range(i):
        a, b = b, a + b
    return a


def q_size(delta: int) -> int:
    """``|Q|`` by inclusion-exclusion: all, minus no-00, minus no-11, plus the two alternating."""
    if delta < 1:
        return 0
    return 2 ** delta - 2 * count_no_00(delta) + 2


# DP state: (last bit or None, seen 00, seen 11)
def _step(state, bit):
    last, h0, h1 = state
    return (bit, h0 or (last == 0 and bit == 0), h1 or (last == 1 and bit == 1))


@lru_cache(maxsize=None)
def _completions(remaining: int, state) -> int:
    """Ways to append ``remaining`` bits after ``state`` and end with both patterns seen."""
    if remaining == 0:
        return int(state[1] and state[2])
    return _completions(remaining - 1, _step(state, 0)) + _completions(remaining - 1, _step(state, 1))


_START = (None, False, False)


def rank_q(s: str) -> int:
    """Lexicographic index of ``s`` among same-length strings containing 00 and 11."""
    state = _START
    idx = 0
    for i, c in enumerate(s):
        bit = int(c)
        if bit:
            idx += _completions(len(s) - i - 1, _step(state, 0))
        state = _step(state, bit)
    if not (state[1] and state[2]):
        raise ValueError(f"{s!r} does not contain both 00 and 11")
    return idx


def unrank_q(idx: int, delta: int) -> str:
    if not 0 <= idx < _completions(delta, _START):
        raise ValueError(f"index {idx} out of range for Q of length {delta}")
    state = _START
    out = []
    for i in range(delta):
        with0 = _completions(delta - i - 1, _step(state, 0))
        bit = 0 if idx < with0 else 1
        if bit:
            idx -= with0
        out.append(str(bit))
        state = _step(state, bit)
    return "".join(out)


@dataclass(frozen=True)
class RegularCodebook:
    """Mixed-radix layout of :func:`reg_enc` for one ``(n, d)``.

    ``delta < 4`` (only ``n <= 2``) leaves ``Q`` empty; the codebook then
    degenerates to the identity on ``n``-bit strings.
    """

    n: int
    d: int
    delta: int
    q: int
    m: int

    @classmethod
    def for_params(cls, params: CodeParams) -> "RegularCodebook":
        return _codebook(params.n, params.d)

    @property
    def identity(self) -> bool:
        return self.q == 0

    @property
    def residual_bits(self) -> int:
        return self.n - self.m * self.delta

    @property
    def size(self) -> int:
        """``M``, the number of encodable indices."""
        return self.q ** self.m * 2 ** self.residual_bits

    def members(self):
        """All of ``Q`` in order; only sensible for small ``delta``."""
        return [unrank_q(i, self.delta) for i in range(self.q)]


@lru_cache(maxsize=None)
def _codebook(n: int, d: int) -> RegularCodebook:
    delta = floor(d / 2 * log2(n)) if n > 1 else 0
    if delta < 4:
        return RegularCodebook(n, d, delta, 0, 0)
    return RegularCodebook(n, d, delta, q_size(delta), n // delta)


def _book(params) -> RegularCodebook:
    if isinstance(params, int):
        params = CodeParams(params)
    return RegularCodebook.for_params(params)


def reg_enc(index: int, params) -> str:
    """Map ``0 <= index < M`` to a regular string of length ``n``."""
    book = _book(params)
    if not 0 <= index < book.size:
        raise ValueError(f"index out of range [0, M) for n={book.n}")
    if book.identity:
        return format(index, f"0{book.n}b") if book.n else ""
    index, tail = divmod(index, 2 ** book.residual_bits)
    digits = []
    for _ in range(book.m):
        index, dgt = divmod(index, book.q)
        digits.append(dgt)
    blocks = [unrank_q(dgt, book.delta) for dgt in reversed(digits)]
    rest = format(tail, f"0{book.residual_bits}b") if book.residual_bits else ""
    return "".join(blocks) + rest


def reg_dec(x: str, params) -> int:
    """Inverse of :func:`reg_enc`; ``ValueError`` when ``x`` is not in its image."""
    book = _book(params)
    x = as_bits(x)
    if len(x) != book.n:
        raise ValueError(f"expected {book.n} bits, got {len(x)}")
    if book.identity:
        return int(x, 2) if x else 0
    index = 0
    for i in range(book.m):
        index = index * book.q + rank_q(x[i * book.delta:(i + 1) * book.delta])
    rest = x[book.m * book.delta:]
    return index * 2 ** book.residual_bits + (int(rest, 2) if rest else 0)


def capacity_threshold(d: int = DEFAULT_D, n_max: int = 4096) -> int:
    """Smallest ``n0`` with ``M >= 2^(n-1)`` for every ``n0 <= n <= n_max``."""
    n0 = None
    for n in range(2, n_max + 1):
        ok = _codebook(n, d).size >= 2 ** (n - 1)
        if ok and n0 is None:
            n0 = n
        elif not ok:
            n0 = None
    if n0 is None:
        raise ValueError(f"capacity bound fails at n={n_max}")
    return n0
