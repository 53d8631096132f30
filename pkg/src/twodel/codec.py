"""End-to-end two-deletion code: message -> codeword and back.

A codeword is ``x + s1 + rep(s2)``:

* ``x``: the message as a regular ``n``-bit string (:func:`reg_enc`);
* ``s1``: the ``unique2`` bundle of ``x``, framed so that it is itself
  regular;
* ``s2``: the ``unique2`` bundle of ``s1``, sent three times per bit.

The decoder tries every split of the missing bits over the three segments
and keeps the splits whose reconstruction re-encodes consistently.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import groupby
from math import floor, log2

from .core import as_bits, is_subsequence
from .decode1 import insert_for_f1
from .decode2_unique import decode_unique2
from .errors import DecodeFailure, InvariantViolation
from .regular import RegularCodebook, reg_dec, reg_enc
from .sketch import CodeParams, SketchBundle, bundle, bundle_bit_length, lift, position_sketch

MARKER = "0011"
DELETIONS = 2


def rep_encode(bits: str, k: int = DELETIONS) -> str:
    """Repeat every bit ``k + 1`` times."""
    return "".join(c * (k + 1) for c in as_bits(bits))


def rep_decode(received: str, original_len: int, k: int = DELETIONS) -> str:
    """Undo :func:`rep_encode` after at most ``k`` deletions.

    A run of ``j`` source bits arrives with between ``j(k+1) - k`` and
    ``j(k+1)`` copies, so rounding each run length up recovers ``j``.
    """
    deficit = original_len * (k + 1) - len(received)
    if not 0 <= deficit <= k:
        raise DecodeFailure("bad-length", f"{len(received)} bits cannot come from {original_len} source bits")
    out = []
    for bit, run in groupby(received):
        count = len(list(run))
        out.append(bit * -(-count // (k + 1)))
    decoded = "".join(out)
    if len(decoded) != original_len:
        raise DecodeFailure("run-lift", f"lifted {len(decoded)} bits, expected {original_len}")
    return decoded


def chunk_size(raw_len: int) -> int:
    return max(8, floor(3.5 * log2(max(raw_len, 2))))


def _marked_length(raw_len: int) -> int:
    step = chunk_size(raw_len) - len(MARKER)
    return raw_len + len(MARKER) * -(-raw_len // step)


@lru_cache(maxsize=None)
def framed_length(raw_len: int) -> int:
    """Longest marked length of any input up to ``raw_len`` bits.

    A longer input can get a larger chunk size and so fewer markers;
    padding to this maximum keeps the framed length non-decreasing.
    """
    return max(_marked_length(r) for r in range(1, raw_len + 1)) if raw_len else 0


def frame(bits: str) -> str:
    """Prefix every ``chunk_size - 4`` data bits (the last group too) with
    ``0011``, then pad with copies of ``0011`` up to :func:`framed_length`."""
    step = chunk_size(len(bits)) - len(MARKER)
    out = "".join(MARKER + bits[i:i + step] for i in range(0, len(bits), step))
    pad = framed_length(len(bits)) - len(out)
    return out + (MARKER * pad)[:pad]


def unframe(framed: str, raw_len: int) -> str:
    step = chunk_size(raw_len) - len(MARKER)
    size = step + len(MARKER)
    if len(framed) != framed_length(raw_len):
        raise DecodeFailure("bad-frame", f"framed length {len(framed)} != {framed_length(raw_len)}")
    body = _marked_length(raw_len)
    pad = len(framed) - body
    if framed[body:] != (MARKER * pad)[:pad]:
        raise DecodeFailure("bad-frame", "padding is not the marker pattern")
    framed = framed[:body]
    out = []
    for i in range(0, len(framed), size):
        chunk = framed[i:i + size]
        if not chunk.startswith(MARKER):
            raise DecodeFailure("bad-frame", f"missing marker at offset {i}")
        out.append(chunk[len(MARKER):])
    return "".join(out)


@dataclass(frozen=True)
class Layout:
    """Segment lengths of a codeword for payload length ``n``."""

    n: int
    raw1: int  # unframed bundle bits of x
    len1: int  # framed s1
    len2: int  # bundle bits of s1

    @property
    def tail(self) -> int:
        return (DELETIONS + 1) * self.len2

    @property
    def total(self) -> int:
        return self.n + self.len1 + self.tail

    @property
    def redundancy(self) -> int:
        return self.total - self.n


@lru_cache(maxsize=None)
def layout(n: int, d: int = 7) -> Layout:
    raw1 = bundle_bit_length(n, "unique2", d)
    len1 = framed_length(raw1)
    return Layout(n, raw1, len1, bundle_bit_length(len1, "unique2", d))


@dataclass(frozen=True)
class Codeword:
    payload: str
    middle: str
    tail: str

    @property
    def bits(self) -> str:
        return self.payload + self.middle + self.tail

    def __len__(self):
        return len(self.payload) + len(self.middle) + len(self.tail)


def _params(params) -> CodeParams:
    return CodeParams(params) if isinstance(params, int) else params


def _sketch_bits(x: str, d: int) -> str:
    return bundle(x, "unique2", CodeParams(len(x), d)).to_bits()


def encode_payload(x: str, d: int = 7) -> Codeword:
    """Protect an arbitrary regular ``x`` (the message step is skipped)."""
    s1 = frame(_sketch_bits(x, d))
    s2 = _sketch_bits(s1, d)
    return Codeword(x, s1, rep_encode(s2))


def encode_message(msg: int, params) -> Codeword:
    """Codeword of ``0 <= msg < M`` for payload length ``params.n``."""
    p = _params(params)
    size = RegularCodebook.for_params(p).size
    if not 0 <= msg < size:
        raise ValueError(f"message out of range [0, M) for n={p.n}")
    return encode_payload(reg_enc(msg, p), p.d)


def _recover(y: str, missing: int, b: SketchBundle) -> str:
    """Undo ``missing`` (0..2) deletions in one segment using its bundle."""
    if missing == 0:
        return y
    if missing == 1:
        base = position_sketch(y).f1
        return insert_for_f1(y, lift(base, b["f1"], b.modulus("f1")))
    return decode_unique2(y, b)


def _splits(deficit: int):
    for d1 in range(deficit + 1):
        for d2 in range(deficit - d1 + 1):
            yield d1, d2, deficit - d1 - d2


def _try_split(received: str, lay: Layout, d: int, split) -> str:
    d1, d2, d3 = split
    a = lay.n - d1
    b = a + lay.len1 - d2
    head, mid, tail = received[:a], received[a:b], received[b:]
    if len(tail) != lay.tail - d3:
        raise DecodeFailure("bad-length", "segment lengths do not add up")
    s2 = rep_decode(tail, lay.len2)
    s1 = _recover(mid, d2, SketchBundle.from_bits(s2, lay.len1, "unique2", d))
    if _sketch_bits(s1, d) != s2:
        raise DecodeFailure("sketch-mismatch", "middle segment does not match the tail sketch")
    raw = unframe(s1, lay.raw1)
    x = _recover(head, d1, SketchBundle.from_bits(raw, lay.n, "unique2", d))
    if _sketch_bits(x, d) != raw:
        raise DecodeFailure("sketch-mismatch", "payload does not match the middle sketch")
    if not (is_subsequence(head, x) and is_subsequence(mid, s1)):
        raise DecodeFailure("not-subsequence", "reconstruction does not explain the received bits")
    return x


def decode_payload(received: str, n: int, d: int = 7) -> str:
    """Recover the payload ``x`` from a codeword with at most two deletions."""
    received = as_bits(received)
    lay = layout(n, d)
    deficit = lay.total - len(received)
    if not 0 <= deficit <= DELETIONS:
        raise DecodeFailure("bad-length", f"received {len(received)} bits, codeword has {lay.total}")
    if deficit == 0:
        x, s1, tail = received[:n], received[n:n + lay.len1], received[n + lay.len1:]
        if encode_payload(x, d).bits == received:
            return x
        raise DecodeFailure("sketch-mismatch", "full-length word is not a codeword")
    found, broken = set(), None
    for split in _splits(deficit):
        try:
            found.add(_try_split(received, lay, d, split))
        except (DecodeFailure, ValueError):
            continue
        except InvariantViolation as exc:
            # a wrong split can feed a decoder data no real string produces
            broken = exc
    if not found:
        if broken is not None:
            raise broken
        raise DecodeFailure("no-hypothesis", "no split of the deletions re-encodes consistently")
    if len(found) > 1:
        raise InvariantViolation(f"{len(found)} distinct payloads explain the received word")
    return found.pop()


def decode_codeword(received: str, params) -> int:
    """Message of a codeword received with at most two deletions."""
    p = _params(params)
    x = decode_payload(received, p.n, p.d)
    try:
        return reg_dec(x, p)
    except ValueError as exc:
        raise DecodeFailure("not-in-image", str(exc)) from exc


@dataclass(frozen=True)
class RedundancyRow:
    n: int
    s1: int
    s2: int
    redundancy: int
    ratio: float


def redundancy_report(ns, d: int = 7) -> list:
    """Segment sizes and ``(N - n - 4 log2 n) / log2 log2 n`` for each ``n``."""
    if isinstance(ns, (int, CodeParams)):
        ns = [ns]
    rows = []
    for n in ns:
        if isinstance(n, CodeParams):
            n, d = n.n, n.d
        lay = layout(n, d)
        ratio = (lay.redundancy - 4 * log2(n)) / log2(log2(n))
        rows.append(RedundancyRow(n, lay.len1, lay.len2, lay.redundancy, ratio))
    return rows
