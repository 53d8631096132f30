"""
Undoing one deletion
====================

Both single-deletion decoders move an inserted bit through ``y`` and stop
where the sketch matches. The position sketch ``f1`` changes by exactly
one per step, so ``f1 mod (n+1)`` is enough. The rank sketch ``f1r``
needs ``mod (2n+2)``.
"""

import random

from twodel.core import delete
from twodel.decode1 import decode_run1, decode_vt, vt_sweep
from twodel.sketch import position_sketch, run_sketch

y = "0110"
# each distinct insertion appears once, in order of f1
for state in vt_sweep(y):
    print(state.value, state.materialize(y))

###############################################################################
# Round trips on random strings.

rng = random.Random(1)
for _ in range(5):
    n = rng.randint(8, 24)
    x = "".join(rng.choice("01") for _ in range(n))
    i = rng.randint(1, n)
    y = delete(x, {i})
    vt = decode_vt(y, position_sketch(x).f1 % (n + 1))
    r1 = decode_run1(y, run_sketch(x).f1r % (2 * n + 2))
    print(f"{x} minus bit {i:2d} -> {vt} {r1} {'ok' if vt == r1 == x else 'MISMATCH'}")
