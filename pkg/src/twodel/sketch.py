"""Sketch functions, per-variant bundles and their serialization.

Four integer sketches are computed from a bitstring ``x`` of length ``n``::

    f1  = sum i * x_i                 f1r = sum_{i=1}^{n+1} r_i
    f2  = sum C(i, 2) * x_i           f2r = sum_{i=1}^{n+1} C(r_i, 2)

plus ``f3r = sum C(r_i, 3)`` for the block sketches. A :class:`SketchBundle`
carries the residues one code variant needs, each tagged with its modulus.
"""

import struct
from dataclasses import dataclass, field
from math import ceil, comb, log2
from typing import NamedTuple

import numpy as np

from .core import rank_sequence, run_count, to_array

VARIANTS = ("vt1", "run1", "list2", "unique2")
MIN_BLOCK = 8
DEFAULT_D = 7


@dataclass(frozen=True)
class CodeParams:
    """Length-dependent constants: moduli, block length, bit widths."""

    n: int
    d: int = DEFAULT_D

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be non-negative")
        if self.d < 1:
            raise ValueError("d must be positive")

    @property
    def log_n(self) -> float:
        return log2(self.n) if self.n > 1 else 0.0

    @property
    def regularity_window(self) -> int:
        """Smallest substring length that must contain both 00 and 11."""
        return ceil(self.d * self.log_n)

    @property
    def block_length(self) -> int:
        return max(MIN_BLOCK, 2 * self.regularity_window)

    @property
    def block_shift(self) -> int:
        return self.block_length // 2

    # moduli
    @property
    def vt_modulus(self) -> int:
        return self.n + 1

    @property
    def run1_modulus(self) -> int:
        return 2 * self.n + 2

    @property
    def f1_modulus(self) -> int:
        return 2 * self.n + 1

    @property
    def f2_modulus(self) -> int:
        return self.n * self.n + 1

    @property
    def f1r_modulus(self) -> int:
        return 4 * self.n + 5

    @property
    def f2r_modulus(self) -> int:
        return 2 * self.n * self.n + 1

    @property
    def w2(self) -> int:
        # max f2r over length-L strings is C(L+2, 3), attained by (10)^(L/2)
        return comb(self.block_length + 2, 3).bit_length()

    @property
    def w3(self) -> int:
        return comb(self.block_length + 2, 4).bit_length()


class PositionSketch(NamedTuple):
    f1: int
    f2: int


class RunSketch(NamedTuple):
    f1r: int
    f2r: int
    f3r: int


class CountSketch(NamedTuple):
    ones_mod3: int
    runs_mod5: int


@dataclass(frozen=True)
class BlockSketch:
    """XOR over blocks of the exact per-block ``f2r``/``f3r`` values."""

    division: str  # "aligned" or "straddling"
    f2r: int
    f3r: int
    w2: int
    w3: int
    block_length: int


@dataclass(frozen=True)
class Residue:
    name: str
    value: int
    modulus: int

    @property
    def width(self) -> int:
        return max(1, (self.modulus - 1).bit_length())


_SHORT = 64


def position_sketch(x: str) -> PositionSketch:
    if len(x) <= _SHORT:
        idx = [i for i, c in enumerate(x, 1) if c == "1"]
        return PositionSketch(sum(idx), sum(i * (i - 1) // 2 for i in idx))
    idx = np.flatnonzero(to_array(x)).astype(np.int64) + 1
    return PositionSketch(int(idx.sum()), int((idx * (idx - 1) // 2).sum()))


def run_sketch(x: str) -> RunSketch:
    if len(x) <= _SHORT:
        f1r = f2r = f3r = 0
        rank, prev = 0, "0"
        for c in x + "1":
            if c != prev:
                rank += 1
                prev = c
            f1r += rank
            f2r += rank * (rank - 1) // 2
            f3r += rank * (rank - 1) * (rank - 2) // 6
        return RunSketch(f1r, f2r, f3r)
    r = rank_sequence(x)[1:]
    f1r = int(r.sum())
    f2r = int((r * (r - 1) // 2).sum())
    if len(x) < 50_000:
        f3r = int((r * (r - 1) * (r - 2) // 6).sum())
    else:
        # sum of C(r,3) exceeds int64 for very long strings
        counts = np.bincount(r)
        f3r = sum(int(c) * comb(k, 3) for k, c in enumerate(counts.tolist()) if c and k >= 3)
    return RunSketch(f1r, f2r, f3r)


def count_sketch(x: str) -> CountSketch:
    return CountSketch(x.count("1") % 3, run_count(x) % 5)


def _block_values(bits: np.ndarray, L: int):
    m = max(1, -(-len(bits) // L))
    padded = np.zeros(m * L, dtype=np.uint8)
    padded[:len(bits)] = bits
    aug = np.zeros((m, L + 2), dtype=np.uint8)
    aug[:, 1:-1] = padded.reshape(m, L)
    aug[:, -1] = 1
    ranks = np.cumsum(aug[:, 1:] != aug[:, :-1], axis=1, dtype=np.int64)
    f2 = (ranks * (ranks - 1) // 2).sum(axis=1)
    f3 = (ranks * (ranks - 1) * (ranks - 2) // 6).sum(axis=1)
    return f2, f3


def block_values(x: str, L: int, shift: int = 0):
    """Per-block exact ``(f2r, f3r)`` arrays for one division.

    ``shift`` zeros are prepended before cutting ``x`` into length-``L``
    blocks; the last block is zero-padded.
    """
    bits = to_array(x)
    if shift:
        bits = np.concatenate((np.zeros(shift, dtype=np.uint8), bits))
    return _block_values(bits, L)


def block_sketches(x: str, params: CodeParams | None = None):
    """The aligned and the half-block-shifted :class:`BlockSketch` of ``x``."""
    params = params or CodeParams(len(x))
    return blocks_at(x, params.block_length, params.w2, params.w3)


def blocks_at(x: str, L: int, w2: int, w3: int):
    """Both block divisions of ``x`` for block length ``L`` (shift ``L // 2``)."""
    out = []
    for division, shift in (("aligned", 0), ("straddling", L // 2)):
        f2, f3 = block_values(x, L, shift)
        out.append(BlockSketch(division,
                               int(np.bitwise_xor.reduce(f2)),
                               int(np.bitwise_xor.reduce(f3)),
                               w2, w3, L))
    return tuple(out)


@dataclass(frozen=True)
class SketchBundle:
    """All residues of one code variant for one string length."""

    variant: str
    n: int
    residues: tuple = ()
    blocks: tuple = field(default=())

    def __getitem__(self, name: str) -> int:
        return self._residue(name).value

    def modulus(self, name: str) -> int:
        return self._residue(name).modulus

    def _residue(self, name):
        for r in self.residues:
            if r.name == name:
                return r
        raise KeyError(f"{self.variant} bundle has no {name!r} residue")

    def __contains__(self, name) -> bool:
        return any(r.name == name for r in self.residues)

    @property
    def bit_length(self) -> int:
        return (sum(r.width for r in self.residues)
                + sum(b.w2 + b.w3 for b in self.blocks))

    def to_bits(self) -> str:
        """Compact fixed-width bit form; the layout is implied by ``(variant, n)``."""
        parts = [format(r.value, f"0{r.width}b") for r in self.residues]
        for b in self.blocks:
            parts.append(format(b.f2r, f"0{b.w2}b"))
            parts.append(format(b.f3r, f"0{b.w3}b"))
        return "".join(parts)

    @classmethod
    def from_bits(cls, bits: str, n: int, variant: str, d: int = DEFAULT_D) -> "SketchBundle":
        params = CodeParams(n, d)
        layout = _layout(variant, params)
        if len(bits) != sum(w for _, _, w in layout):
            raise ValueError(f"expected {sum(w for _, _, w in layout)} bits, got {len(bits)}")
        pos = 0
        residues, blocks, pending = [], [], {}
        for name, modulus, width in layout:
            value = int(bits[pos:pos + width], 2)
            pos += width
            if name.startswith("block:"):
                _, division, which = name.split(":")
                pending[which] = value
                if which == "f3r":
                    blocks.append(BlockSketch(division, pending["f2r"], value, params.w2, params.w3,
                                              params.block_length))
            else:
                if value >= modulus:
                    raise ValueError(f"residue {name}={value} not below modulus {modulus}")
                residues.append(Residue(name, value, modulus))
        return cls(variant, n, tuple(residues), tuple(blocks))

    def to_bytes(self) -> bytes:
        out = bytearray(_MAGIC)
        out += struct.pack(">BBI", _VERSION, VARIANTS.index(self.variant), self.n)
        out.append(len(self.residues))
        for r in self.residues:
            nbytes = max(1, -(-r.modulus.bit_length() // 8))
            out += struct.pack(">BB", _NAMES.index(r.name), nbytes)
            out += r.modulus.to_bytes(nbytes, "big") + r.value.to_bytes(nbytes, "big")
        out.append(len(self.blocks))
        for b in self.blocks:
            out += struct.pack(">BHBB", _DIVISIONS.index(b.division), b.block_length, b.w2, b.w3)
            out += b.f2r.to_bytes(-(-b.w2 // 8), "big") + b.f3r.to_bytes(-(-b.w3 // 8), "big")
        return bytes(out)

    @classmethod
    def from_bytes(cls, data: bytes) -> "SketchBundle":
        if data[:4] != _MAGIC:
            raise ValueError("bad magic")
        version, variant_id, n = struct.unpack_from(">BBI", data, 4)
        if version != _VERSION:
            raise ValueError(f"unsupported sketch format version {version}")
        pos = 10
        residues = []
        count = data[pos]
        pos += 1
        for _ in range(count):
            name_id, nbytes = struct.unpack_from(">BB", data, pos)
            pos += 2
            modulus = int.from_bytes(data[pos:pos + nbytes], "big")
            value = int.from_bytes(data[pos + nbytes:pos + 2 * nbytes], "big")
            pos += 2 * nbytes
            residues.append(Residue(_NAMES[name_id], value, modulus))
        count = data[pos]
        pos += 1
        blocks = []
        for _ in range(count):
            div_id, L, w2, w3 = struct.unpack_from(">BHBB", data, pos)
            pos += 5
            n2, n3 = -(-w2 // 8), -(-w3 // 8)
            f2r = int.from_bytes(data[pos:pos + n2], "big")
            f3r = int.from_bytes(data[pos + n2:pos + n2 + n3], "big")
            pos += n2 + n3
            blocks.append(BlockSketch(_DIVISIONS[div_id], f2r, f3r, w2, w3, L))
        if pos != len(data):
            raise ValueError("trailing bytes after sketch bundle")
        return cls(VARIANTS[variant_id], n, tuple(residues), tuple(blocks))


_MAGIC = b"TDSK"
_VERSION = 1
_NAMES = ("f1", "f2", "f1r", "f2r", "ones", "runs")
_DIVISIONS = ("aligned", "straddling")


def _residue_moduli(variant: str, p: CodeParams):
    if variant == "vt1":
        return [("f1", p.vt_modulus)]
    if variant == "run1":
        return [("f1r", p.run1_modulus)]
    if variant == "list2":
        return [("f1r", p.f1r_modulus), ("f2r", p.f2r_modulus), ("runs", 5)]
    if variant == "unique2":
        return [("f1", p.f1_modulus), ("f2", p.f2_modulus), ("f1r", p.f1r_modulus),
                ("ones", 3), ("runs", 5)]
    raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")


def _layout(variant: str, p: CodeParams):
    layout = [(name, m, max(1, (m - 1).bit_length())) for name, m in _residue_moduli(variant, p)]
    if variant == "unique2":
        for division in _DIVISIONS:
            layout.append((f"block:{division}:f2r", None, p.w2))
            layout.append((f"block:{division}:f3r", None, p.w3))
    return layout


def bundle_bit_length(n: int, variant: str = "unique2", d: int = DEFAULT_D) -> int:
    """Length of :meth:`SketchBundle.to_bits` for any string of length ``n``."""
    return sum(w for _, _, w in _layout(variant, CodeParams(n, d)))


def bundle(x: str, variant: str = "unique2", params: CodeParams | None = None) -> SketchBundle:
    """Compute the :class:`SketchBundle` of ``x`` for ``variant``."""
    params = params or CodeParams(len(x))
    if params.n != len(x):
        raise ValueError(f"params are for n={params.n} but len(x)={len(x)}")
    moduli = _residue_moduli(variant, params)
    values = {}
    names = {name for name, _ in moduli}
    if names & {"f1", "f2"}:
        values.update(position_sketch(x)._asdict())
    if names & {"f1r", "f2r"}:
        values.update(run_sketch(x)._asdict())
    if "ones" in names:
        values["ones"] = x.count("1")
    if "runs" in names:
        values["runs"] = run_count(x)
    residues = tuple(Residue(name, values[name] % m, m) for name, m in moduli)
    blocks = block_sketches(x, params) if variant == "unique2" else ()
    return SketchBundle(variant, params.n, residues, blocks)


def params_of(ref: SketchBundle) -> CodeParams:
    """The :class:`CodeParams` a bundle was computed with (``d`` from its block length)."""
    if ref.blocks:
        L = ref.blocks[0].block_length
        for d in range(1, 256):
            p = CodeParams(ref.n, d)
            if p.block_length == L:
                return p
        raise ValueError(f"no d gives block length {L} at n={ref.n}")
    return CodeParams(ref.n)


def matches(x: str, ref: SketchBundle) -> bool:
    """Whether ``x`` has exactly the bundle ``ref``."""
    return len(x) == ref.n and bundle(x, ref.variant, params_of(ref)) == ref


def lift(observed: int, residue: int, modulus: int) -> int:
    """Smallest integer ``>= observed`` congruent to ``residue`` modulo ``modulus``."""
    return observed + (residue - observed) % modulus
