"""Single-deletion decoders driven by a moving inserted bit.

``decode_vt`` recovers ``x`` from ``y`` and ``f1(x) mod (n+1)``;
``decode_run1`` uses ``f1r(x) mod (2n+2)`` instead.
"""

from typing import NamedTuple

from .core import rank_sequence
from .errors import DecodeFailure
from .sketch import lift, position_sketch, run_sketch


class MovingBit(NamedTuple):
    """One placement visited by a sweep: ``bit`` inserted at y-gap ``gap``.

    ``gap`` counts the bits of ``y`` left of the inserted bit, so deleting
    position ``gap + 1`` of the materialised string gives back ``y``.
    """

    gap: int
    bit: str
    value: int

    def materialize(self, y: str) -> str:
        return y[:self.gap] + self.bit + y[self.gap:]


def vt_sweep(y: str):
    """Yield every distinct single insertion into ``y`` in order of increasing ``f1``.

    A 0 starts at the end and moves left, gaining one each time it passes a 1;
    at the front it becomes a 1 and moves right, gaining one per 0 passed.
    The values run through ``f1(y) .. f1(y) + len(y) + 1`` once each.
    """
    value = position_sketch(y).f1
    m = len(y)
    yield MovingBit(m, "0", value)
    for g in range(m - 1, -1, -1):
        if y[g] == "1":
            value += 1
            yield MovingBit(g, "0", value)
    value += 1
    yield MovingBit(0, "1", value)
    for g in range(1, m + 1):
        if y[g - 1] == "0":
            value += 1
            yield MovingBit(g, "1", value)


def insert_for_f1(y: str, target: int) -> str:
    """The unique single insertion into ``y`` whose ``f1`` equals ``target``."""
    base = position_sketch(y).f1
    if not base <= target <= base + len(y) + 1:
        raise DecodeFailure("no-placement", f"f1 target {target} outside [{base}, {base + len(y) + 1}]")
    for state in vt_sweep(y):
        if state.value == target:
            return state.materialize(y)
    raise DecodeFailure("no-placement", f"f1 target {target}")  # pragma: no cover


def decode_vt(y: str, f1_residue: int) -> str:
    """Recover ``x`` (length ``len(y)+1``) from ``y`` and ``f1(x) mod (n+1)``."""
    n = len(y) + 1
    target = lift(position_sketch(y).f1, f1_residue % (n + 1), n + 1)
    return insert_for_f1(y, target)


def _augmented(y: str):
    return [0] + [int(c) for c in y] + [1]


def run1_placements(y: str):
    """Split all single insertions into ``y`` by whether they create runs.

    Returns ``(plain, creating)``: ``plain`` lists ``(increase, gap, bit)``
    for inserting into run ``r`` (increase ``r``); ``creating`` lists the
    run-creating placements from right to left with strictly growing
    increases. Gaps index the augmented string: gap ``g`` sits between
    ``aug[g]`` and ``aug[g+1]``.
    """
    aug = _augmented(y)
    r = rank_sequence(y).tolist()
    last = len(aug) - 1  # index of the right boundary bit
    plain = []
    first_of_run = {}
    for i, rank in enumerate(r):
        first_of_run.setdefault(rank, i)
    for rank, i in first_of_run.items():
        plain.append((rank, min(i, last - 1), str(rank % 2)))

    creating = []
    prev = None
    for g in range(last - 1, -1, -1):
        if aug[g] != aug[g + 1]:
            continue
        if prev is None:
            inc = r[g] + 1 + 2 * (last - g)
        else:
            # moving left past t alternating bits adds t + 1
            inc = prev[0] + (prev[1] - g) + 1
        prev = (inc, g)
        creating.append((inc, g, str(1 - aug[g])))
    return plain, creating


def decode_run1(y: str, f1r_residue: int) -> str:
    """Recover ``x`` (length ``len(y)+1``) from ``y`` and ``f1r(x) mod (2n+2)``."""
    n = len(y) + 1
    base = run_sketch(y).f1r
    increase = lift(base, f1r_residue % (2 * n + 2), 2 * n + 2) - base
    plain, creating = run1_placements(y)
    max_plain = len(plain) - 1
    if increase <= max_plain:
        _, gap, bit = plain[increase]
        return y[:gap] + bit + y[gap:]
    for inc, gap, bit in creating:
        if inc == increase:
            return y[:gap] + bit + y[gap:]
        if inc > increase:
            break
    raise DecodeFailure("no-placement", f"no single insertion raises f1r by {increase}")
