"""Unique two-deletion decoding of regular strings.

The bundle's ``ones`` residue says which two bits are missing. Two equal
bits are placed from ``f1`` and ``f2`` alone. For one 0 and one 1, every
placement of the moving 1 forces the position of the 0 through ``f1``; all
placements are scored at once (numpy) on ``f2``, ``f1r`` and the run count.
Survivors beyond one are confined to a short window and told apart by the
block sketches.
"""

from dataclasses import dataclass
from typing import NamedTuple
from math import comb

import numpy as np

from .core import complement, rank_sequence, supersequences, to_array
from .errors import DecodeFailure, InvariantViolation, RegularityViolation
from .sketch import SketchBundle, blocks_at, lift, matches, position_sketch, run_sketch


def _prefix(y: str):
    yb = to_array(y).astype(np.int64)
    m = len(yb)
    ones = np.zeros(m + 1, dtype=np.int64)
    np.cumsum(yb, out=ones[1:])
    psum = np.zeros(m + 1, dtype=np.int64)
    np.cumsum(yb * np.arange(1, m + 1), out=psum[1:])
    return yb, ones, psum


@dataclass(frozen=True)
class Placements:
    """Every placement of a moving 1 and an ``f1``-forced 0 in ``y``.

    Arrays are aligned and ordered by the 1's y-gap ``g1`` (gap ``g`` sits
    after ``g`` bits of ``y``); only gaps whose left neighbour is a 0 (or the
    left end) are listed, so consecutive entries differ by one elementary
    move. ``zero_first`` is true when the 0 ends up left of the 1.
    """

    y: str
    g1: np.ndarray
    g0: np.ndarray
    zero_first: np.ndarray
    f2: np.ndarray
    f1r: np.ndarray
    run_delta: np.ndarray
    rank1: np.ndarray
    rank0: np.ndarray

    def __len__(self):
        return len(self.g1)

    def materialize(self, i: int) -> str:
        g1, g0, zf = int(self.g1[i]), int(self.g0[i]), bool(self.zero_first[i])
        y = self.y
        if g0 < g1 or (g0 == g1 and zf):
            return y[:g0] + "0" + y[g0:g1] + "1" + y[g1:]
        return y[:g1] + "1" + y[g1:g0] + "0" + y[g0:]

    def positions(self, i: int):
        """1-indexed positions of the inserted ``(1, 0)`` in the result."""
        g1, g0, zf = int(self.g1[i]), int(self.g0[i]), bool(self.zero_first[i])
        if zf:
            return g1 + 2, g0 + 1
        return g1 + 1, g0 + 2


def placements(y: str, f1_target: int) -> Placements:
    """Score all one-0-one-1 insertions into ``y`` with ``f1 = f1_target``."""
    yb, ones, psum = _prefix(y)
    m = len(yb)
    W = int(ones[m])
    aug = np.concatenate(([0], yb, [1]))
    r = rank_sequence(y)
    first_one = np.concatenate(([0], np.flatnonzero(yb) + 1))  # position of the k-th one

    g1 = np.flatnonzero(aug[:m + 1] == 0)
    # ones of y with the 1 inserted that must lie right of the 0
    need = f1_target - int(position_sketch(y).f1) - (g1 + 1) - (W - ones[g1])
    keep = (need >= 0) & (need <= W + 1)
    g1, need = g1[keep], need[keep]
    k = W + 1 - need  # ones left of the 0; the 0 sits right after the k-th
    left = ones[g1]
    zero_first = k <= left
    g0 = np.where(zero_first, first_one[np.minimum(k, W)],
                  np.where(k == left + 1, g1, first_one[np.maximum(k - 1, 0)]))

    a = np.minimum(g0, g1)
    b = np.maximum(g0, g1)
    pos1 = g1 + 1 + zero_first
    f2 = (int(position_sketch(y).f2) + (psum[b] - psum[a]) + 2 * (psum[m] - psum[b]) + (W - ones[b])
          + pos1 * (pos1 - 1) // 2)

    # insert the right bit first, then the left one
    same = g0 == g1
    right_bit = np.where(same, zero_first.astype(np.int64), (g1 > g0).astype(np.int64))
    left_bit = 1 - right_bit
    join1 = right_bit != aug[b]
    create1 = ((aug[b] == aug[b + 1]) & join1).astype(np.int64)
    own1 = r[b] + join1
    left_nb = aug[a]
    right_nb = np.where(a < b, aug[np.minimum(a + 1, m + 1)], right_bit)
    join2 = left_bit != left_nb
    create2 = ((left_nb == right_nb) & join2).astype(np.int64)
    own2 = r[a] + join2
    f1r = (int(r[1:].sum()) + own1 + 2 * (m + 1 - b) * create1
           + own2 + 2 * (m + 2 - a) * create2)
    rank_right = own1 + 2 * create2
    rank1 = np.where(right_bit == 1, rank_right, own2)
    rank0 = np.where(right_bit == 1, own2, rank_right)
    return Placements(y, g1, g0, zero_first, f2, f1r, 2 * (create1 + create2), rank1, rank0)


class MoveState(NamedTuple):
    """A string with its moving 1 at ``p1`` and moving 0 at ``p0`` (1-indexed)."""

    x: str
    p1: int
    p0: int

    @property
    def gap(self) -> int:
        """y-gap of the moving 1: bits of ``y`` left of it."""
        return self.p1 - 1 - (self.p0 < self.p1)


def _move(s: list, p: int, other: int):
    # 0-indexed; pass own-valued bits (left behind by the other moving bit),
    # one opposite bit, then the run of own-valued bits
    b = s[p]
    q = p
    while q > 0 and s[q - 1] == b:
        q -= 1
    if q == 0:
        return None
    q -= 1
    while q > 0 and s[q - 1] == b:
        q -= 1
    s.insert(q, s.pop(p))
    if q <= other < p:
        other += 1
    return q, other


def elementary_moves(y: str, f1_target: int):
    """Yield the move sequence: both bits start as far right as ``f1`` allows.

    In each move the leftmost moving bit goes first, past one bit of the
    opposite value and then past the run of its own value; then the other
    bit does the same. Stops when a bit would leave the string.
    """
    pl = placements(y, f1_target)
    if not len(pl):
        return
    top = len(pl) - 1
    s = list(pl.materialize(top))
    p1, p0 = (p - 1 for p in pl.positions(top))
    while p0 > 0 and s[p0 - 1] == "0":
        p0 -= 1
    yield MoveState("".join(s), p1 + 1, p0 + 1)
    while True:
        if p1 < p0:
            step = _move(s, p1, p0)
            if step is None:
                return
            p1, p0 = step
            step = _move(s, p0, p1)
            if step is None:
                return
            p0, p1 = step
        else:
            step = _move(s, p0, p1)
            if step is None:
                return
            p0, p1 = step
            step = _move(s, p1, p0)
            if step is None:
                return
            p1, p0 = step
        yield MoveState("".join(s), p1 + 1, p0 + 1)


def pseudoranks(y: str, state: MoveState):
    """``(A1, A0)`` of one state.

    Bits of ``y`` (and the right boundary) count at their rank in ``y``,
    plus two when right of the inserted 1 (for ``A1``) or 0 (for ``A0``);
    the inserted bits count at their actual rank in ``x``.
    """
    ry = rank_sequence(y)
    rx = rank_sequence(state.x)
    m = len(y)
    base = int(ry[1:].sum())
    g0 = state.p0 - 1 - (state.p1 < state.p0)
    inserted = int(rx[state.p1] + rx[state.p0])
    return (base + 2 * (m + 1 - state.gap) + inserted,
            base + 2 * (m + 1 - g0) + inserted)


@dataclass(frozen=True)
class PseudorankProfile:
    """Pseudoranks along the elementary-move sequence of a moving 1 and 0.

    ``gaps[k]`` is the y-gap of the moving 1 in ``states[k]``. ``f2``,
    ``f1r`` and ``run_delta`` hold the true values of each state's string.
    """

    states: tuple
    gaps: np.ndarray
    A1: np.ndarray
    A0: np.ndarray
    f2: np.ndarray
    f1r: np.ndarray
    run_delta: np.ndarray
    f1r_target: int | None = None

    def __len__(self):
        return len(self.states)

    def materialize(self, k: int) -> str:
        return self.states[k].x

    def positions(self, k: int):
        return self.states[k].p1, self.states[k].p0


def pseudorank_profile(y: str, f1_target: int, f1r_target: int | None = None) -> PseudorankProfile:
    """Walk the move sequence; costs ``O(n)`` per state, meant for analysis."""
    states = tuple(elementary_moves(y, f1_target))
    runs_y = int(rank_sequence(y)[-1])
    A = [pseudoranks(y, st) for st in states]
    col = lambda vals: np.array(vals, dtype=np.int64)
    return PseudorankProfile(
        states,
        col([st.gap for st in states]),
        col([a for a, _ in A]),
        col([b for _, b in A]),
        col([position_sketch(st.x).f2 for st in states]),
        col([run_sketch(st.x).f1r for st in states]),
        col([int(rank_sequence(st.x)[-1]) - runs_y for st in states]),
        f1r_target,
    )


def _two_ones(y: str, f1_target: int, f2_target: int) -> list:
    yb, ones, psum = _prefix(y)
    m = len(yb)
    W = int(ones[m])
    zeros_at = np.concatenate(([0], np.flatnonzero(yb == 0) + 1))  # position of the j-th zero
    Z = m - W
    # a 1 placed after j zeros adds j + (ones so far) + 1 to f1
    s = f1_target - int(position_sketch(y).f1) - 2 * W - 3
    if s < 0 or s > 2 * Z:
        return []
    j1 = np.arange(max(0, s - Z), s // 2 + 1)
    g, h = zeros_at[j1], zeros_at[s - j1]
    f2 = (int(position_sketch(y).f2) + (psum[h] - psum[g]) + 2 * (psum[m] - psum[h])
          + (W - ones[h]) + g * (g + 1) // 2 + (h + 2) * (h + 1) // 2)
    out = []
    for i in np.flatnonzero(f2 == f2_target):
        gi, hi = int(g[i]), int(h[i])
        out.append(y[:gi] + "1" + y[gi:hi] + "1" + y[hi:])
    return out


def decode_same_bits(y: str, f1_target: int, f2_target: int, bit) -> str:
    """Insert two copies of ``bit`` into ``y`` matching exact ``f1`` and ``f2``."""
    bit = str(int(bit))
    if bit == "1":
        found = _two_ones(y, f1_target, f2_target)
    else:
        n = len(y) + 2
        found = [complement(x) for x in
                 _two_ones(complement(y), n * (n + 1) // 2 - f1_target, comb(n + 1, 3) - f2_target)]
    found = sorted(set(found))
    if not found:
        raise DecodeFailure("no-placement", f"no two {bit}s match f1 and f2")
    if len(found) > 1:
        raise InvariantViolation(f"{len(found)} placements of two {bit}s share f1 and f2")
    return found[0]


def _unique(found, what):
    found = sorted(set(found))
    if not found:
        raise DecodeFailure("no-placement", f"no placement of one 0 and one 1 matches {what}")
    return found


def decode_04_runs(y: str, f1_target: int, f1r_target: int, run_delta: int = None) -> str:
    """One 0 and one 1 adding 0 or 4 runs: ``f1`` and ``f1r`` decide."""
    pl = placements(y, f1_target)
    hit = pl.f1r == f1r_target
    if run_delta is None:
        hit &= pl.run_delta != 2
    else:
        if run_delta not in (0, 4):
            raise ValueError("run_delta must be 0 or 4")
        hit &= pl.run_delta == run_delta
    found = _unique([pl.materialize(i) for i in np.flatnonzero(hit)], "f1r")
    if len(found) > 1:
        raise InvariantViolation(f"{len(found)} strings share f1 and f1r with run change {run_delta}")
    return found[0]


@dataclass(frozen=True)
class Localization:
    """1-indexed window of ``x`` positions holding every survivor's insertions."""

    start: int
    end: int
    candidates: tuple

    @property
    def width(self) -> int:
        return self.end - self.start + 1


def localize(profile, f1r_target: int, params, f2_target: int | None = None):
    """Filter placements on ``f1r`` (and ``f2``) with two new runs.

    ``profile`` is a :class:`PseudorankProfile` or :class:`Placements`; both
    expose per-entry ``f2``, ``f1r``, ``run_delta`` and ``materialize``.

    Returns the single surviving string, or a :class:`Localization` when
    several remain. A window wider than ``2 * block_length`` means the input
    was not regular. ``params`` is a :class:`CodeParams` or a block length.
    """
    L = params if isinstance(params, int) else params.block_length
    pl = profile
    hit = (pl.run_delta == 2) & (pl.f1r == f1r_target)
    if f2_target is not None:
        hit &= pl.f2 == f2_target
    idx = np.flatnonzero(hit)
    found = _unique([pl.materialize(i) for i in idx], "f2 and f1r")
    if len(found) == 1:
        return found[0]
    spots = [p for i in idx for p in pl.positions(i)]
    loc = Localization(min(spots), max(spots), tuple(found))
    if loc.width > 2 * L:
        raise RegularityViolation(f"survivors span positions {loc.start}..{loc.end}, wider than {2 * L}")
    return loc


def disambiguate_blocks(candidates, bundle: SketchBundle) -> str:
    """The one candidate whose block sketches (both divisions) equal the bundle's."""
    candidates = list(dict.fromkeys(candidates))
    if len(candidates) == 1:
        return candidates[0]
    if not bundle.blocks:
        raise ValueError("bundle carries no block sketches")
    ref = bundle.blocks[0]
    matches = [x for x in candidates
               if blocks_at(x, ref.block_length, ref.w2, ref.w3) == bundle.blocks]
    if len(matches) != 1:
        raise InvariantViolation(f"{len(matches)} of {len(candidates)} candidates match the block sketches")
    return matches[0]


def _targets(y: str, b: SketchBundle):
    pos = position_sketch(y)
    f1 = lift(pos.f1, b["f1"], b.modulus("f1"))
    f2 = lift(pos.f2, b["f2"], b.modulus("f2"))
    f1r = lift(run_sketch(y).f1r, b["f1r"], b.modulus("f1r"))
    return f1, f2, f1r


def decode_unique2(y: str, bundle: SketchBundle, debug: bool = False) -> str:
    """Recover ``x`` from ``y`` (two bits shorter) and its ``unique2`` bundle.

    With ``debug=True`` the answer is cross-checked against brute-force
    filtering of every two-bit supersequence of ``y``.
    """
    if bundle.variant != "unique2":
        raise ValueError(f"expected a unique2 bundle, got {bundle.variant}")
    n = bundle.n
    if len(y) != n - 2:
        raise ValueError(f"len(y)={len(y)} but bundle is for n={n}")
    f1, f2, f1r = _targets(y, bundle)
    which = (bundle["ones"] - y.count("1")) % 3
    if which == 0:
        x = decode_same_bits(y, f1, f2, 0)
    elif which == 2:
        x = decode_same_bits(y, f1, f2, 1)
    else:
        delta = (bundle["runs"] - (int(rank_sequence(y)[-1]))) % 5
        if delta in (0, 4):
            x = decode_04_runs(y, f1, f1r, delta)
        elif delta == 2:
            got = localize(placements(y, f1), f1r, bundle.blocks[0].block_length, f2)
            x = got if isinstance(got, str) else disambiguate_blocks(got.candidates, bundle)
        else:
            raise DecodeFailure("bad-run-delta", f"run count change {delta} is not 0, 2 or 4")
    if debug:
        brute = [c for c in supersequences(y, 2) if matches(c, bundle)]
        if brute != [x]:
            raise InvariantViolation(f"structured decode {x!r} disagrees with brute force {brute!r}")
    return x
