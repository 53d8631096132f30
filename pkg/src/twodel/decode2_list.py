"""Two-deletion list decoding (lists of size at most two) from run sketches.

The bundle supplies ``f1r``, ``f2r`` and the run count modulo 5. The run
count change (0, 2 or 4) selects how the two missing bits are searched for:

* 0: both bits join existing runs ``r1 <= r2``; the two sums pin them down.
* 4: both bits create runs; the pair is found by a two-pointer sweep over
  run-creating gaps and ``f2r`` is strictly decreasing as they spread.
* 2: one bit ``b0`` creates runs, the other joins the run forced by ``f1r``;
  ``b0`` is swept right to left and at most two placements survive ``f2r``.
"""

from math import comb, isqrt
from typing import NamedTuple

from .core import rank_sequence
from .errors import DecodeFailure, InvariantViolation
from .sketch import lift, run_sketch


def convexity_hypothesis(a, b, t) -> bool:
    """Whether ``(a, b, t)`` meets the premise of the convexity inequality.

    ``a`` and ``b`` are equal-sum non-negative sequences; every index with
    ``a_i < b_i`` has ``b_i <= t`` and every index with ``a_i > b_i`` has
    ``b_i >= t``. Under it, ``pair_energy(a) > pair_energy(b)`` unless
    ``a == b``.
    """
    if len(a) != len(b) or sum(a) != sum(b):
        return False
    if any(v < 0 for v in a) or any(v < 0 for v in b):
        return False
    for ai, bi in zip(a, b):
        if ai < bi and bi > t:
            return False
        if ai > bi and bi < t:
            return False
    return True


def pair_energy(a) -> int:
    return sum(v * (v - 1) for v in a)


class _Ranks:
    """Rank bookkeeping for the boundary-augmented ``y``."""

    def __init__(self, y: str):
        self.y = y
        self.m = len(y)
        self.aug = [0] + [int(c) for c in y] + [1]
        self.r = rank_sequence(y).tolist()
        self.R = self.r[-1]
        self.f1r = sum(self.r[1:])
        self.f2r = sum(v * (v - 1) // 2 for v in self.r[1:])
        last = self.m + 1
        # suffix[g] = sum of r_i for i in g+1..m+1
        self.suffix = [0] * (last + 1)
        for g in range(last - 1, -1, -1):
            self.suffix[g] = self.suffix[g + 1] + self.r[g + 1]
        self.first = {}
        for i, v in enumerate(self.r):
            self.first.setdefault(v, i)
        self.equal_gaps = [g for g in range(last) if self.aug[g] == self.aug[g + 1]]

    def count_after(self, g):
        return self.m + 1 - g

    def creating_increase(self, g):
        """``f1r`` gain from a run-creating insertion at gap ``g``."""
        return self.r[g] + 1 + 2 * self.count_after(g)

    def creating_f2r_gain(self, g):
        return comb(self.r[g] + 1, 2) + 2 * self.suffix[g] + self.count_after(g)

    def join_gap(self, rank):
        """A y-gap where inserting bit ``rank % 2`` joins run ``rank``."""
        return min(self.first[rank], self.m)


def _insert(s: str, gap: int, bit) -> str:
    return s[:gap] + str(bit) + s[gap:]


def _insert_two(y, gap_a, bit_a, gap_b, bit_b):
    # gap_a <= gap_b; bit_a ends up left of bit_b when the gaps coincide
    return y[:gap_a] + str(bit_a) + y[gap_a:gap_b] + str(bit_b) + y[gap_b:]


def _delta0(ctx: _Ranks, d1: int, d2: int):
    # r1 + r2 = d1 and r1^2 + r2^2 = 2*d2 + d1
    disc = 2 * (2 * d2 + d1) - d1 * d1
    if disc < 0:
        return []
    q = isqrt(disc)
    if q * q != disc or (d1 - q) % 2 or d1 < q:
        return []
    r1, r2 = (d1 - q) // 2, (d1 + q) // 2
    if r2 > ctx.R:
        return []
    g1, g2 = ctx.join_gap(r1), ctx.join_gap(r2)
    return [_insert_two(ctx.y, g1, r1 % 2, g2, r2 % 2)]


class SpreadPair(NamedTuple):
    left_gap: int
    right_gap: int
    f2r_gain: int


def delta4_pairs(ctx: _Ranks, d1: int):
    """Run-creating gap pairs with total ``f1r`` gain ``d1``, closest pair first."""
    gaps = ctx.equal_gaps
    inc = [ctx.creating_increase(g) for g in gaps]
    want = d1 - 2
    pairs = []
    i, j = 0, len(gaps) - 1
    while i < j:
        s = inc[i] + inc[j]
        if s == want:
            a, b = gaps[i], gaps[j]
            rb = ctx.r[b]
            gain = (comb(ctx.r[a] + 1, 2) + comb(rb + 1, 2) + 2 * rb + 3
                    + 2 * ctx.suffix[a] + ctx.count_after(a)
                    + 2 * ctx.suffix[b] + 5 * ctx.count_after(b))
            pairs.append(SpreadPair(a, b, gain))
            i += 1
            j -= 1
        elif s > want:
            i += 1
        else:
            j -= 1
    pairs.reverse()
    return pairs


def _delta4(ctx: _Ranks, d1: int, d2: int):
    out = []
    for a, b, gain in delta4_pairs(ctx, d1):
        if gain == d2:
            out.append(_insert_two(ctx.y, a, 1 - ctx.aug[a], b, 1 - ctx.aug[b]))
    return out


class Delta2State(NamedTuple):
    """Run-creating bit at y-gap ``gap``; the other bit joins run ``rho``."""

    gap: int
    rho: int
    side: int  # -1: joining bit left of the run-creating one, +1 right, 0 same run
    f2r_gain: int


def delta2_scan(ctx: _Ranks, d1: int):
    """Valid placements of the run-creating bit, right to left (elementary moves)."""
    for g in reversed(ctx.equal_gaps):
        rho = d1 - ctx.creating_increase(g)
        if rho > ctx.R + 2:
            continue
        if rho < 0:
            break  # the forced rank only falls further as the bit moves left
        own = ctx.r[g] + 1
        side = (rho > own) - (rho < own)
        gain = ctx.creating_f2r_gain(g) + comb(rho, 2)
        yield Delta2State(g, rho, side, gain)


def _materialize_delta2(ctx: _Ranks, state: Delta2State) -> str:
    g, rho = state.gap, state.rho
    z = _insert(ctx.y, g, 1 - ctx.aug[g])
    own = ctx.r[g] + 1
    if rho < own:
        idx = ctx.first[rho]
    elif rho == own:
        idx = g + 1
    elif rho - 2 == ctx.r[g]:
        idx = g + 2
    else:
        idx = ctx.first[rho - 2] + 1
    return _insert(z, min(idx, ctx.m + 1), rho % 2)


def _delta2(ctx: _Ranks, d1: int, d2: int):
    if not ctx.equal_gaps:
        # y = (10)^k: the only way to add two runs is one more "10"
        x = ctx.y + "10"
        rs = run_sketch(x)
        return [x] if (rs.f1r - ctx.f1r, rs.f2r - ctx.f2r) == (d1, d2) else []
    return [_materialize_delta2(ctx, s) for s in delta2_scan(ctx, d1) if s.f2r_gain == d2]


def decode_list2(y: str, bundle) -> list:
    """All ``x`` with subsequence ``y`` matching a ``list2`` bundle (at most two)."""
    if bundle.variant != "list2":
        raise ValueError(f"expected a list2 bundle, got {bundle.variant}")
    n = bundle.n
    if len(y) != n - 2:
        raise ValueError(f"len(y)={len(y)} but bundle is for n={n}")
    ctx = _Ranks(y)
    d1 = lift(ctx.f1r, bundle["f1r"], bundle.modulus("f1r")) - ctx.f1r
    d2 = lift(ctx.f2r, bundle["f2r"], bundle.modulus("f2r")) - ctx.f2r
    delta = (bundle["runs"] - ctx.R) % 5
    if delta == 0:
        found = _delta0(ctx, d1, d2)
    elif delta == 2:
        found = _delta2(ctx, d1, d2)
    elif delta == 4:
        found = _delta4(ctx, d1, d2)
    else:
        raise DecodeFailure("bad-run-delta", f"run count change {delta} is not 0, 2 or 4")
    result = sorted(set(found))
    if not result:
        raise DecodeFailure("no-placement", "no two insertions match the run sketches")
    if len(result) > 2:
        raise InvariantViolation(f"{len(result)} strings survive list decoding of {y!r}")
    return result
