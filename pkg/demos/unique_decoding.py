"""
Unique recovery from two deletions
==================================

The ``unique2`` bundle adds ``f1``, ``f2``, the ones count and block
sketches. The hard case is one missing 0 and one missing 1 that add two
runs: every placement of the 1 forces the 0 through ``f1``, and a few
placements can share ``f2`` and ``f1r``.
"""

import numpy as np

from twodel.core import delete
from twodel.decode2_unique import decode_unique2, localize, placements, pseudorank_profile
from twodel.sketch import CodeParams, bundle, position_sketch, run_sketch

a, b = "110111101011", "111010111101"
y = "1101111101"
print(a, position_sketch(a), run_sketch(a).f1r)
print(b, position_sketch(b), run_sketch(b).f1r)

###############################################################################
# Scoring every placement at once leaves both strings.

f1, f2 = position_sketch(a)
pl = placements(y, f1)
loc = localize(pl, run_sketch(a).f1r, CodeParams(12), f2)
print("window", loc.start, "..", loc.end, "candidates", loc.candidates)

###############################################################################
# Only the block sketches tell them apart.

for x in (a, b):
    blocks = [(blk.f2r, blk.f3r) for blk in bundle(x).blocks]
    print(x, "blocks", blocks, "decoded", decode_unique2(y, bundle(x)))

###############################################################################
# Along the move sequence the pseudoranks are not monotone: the 1 and the 0
# change the ranks seen by each other.

pr = pseudorank_profile("100111", 24)
for st, a1, a0 in zip(pr.states, pr.A1, pr.A0):
    marked = "".join(f"[{c}]" if i in (st.p1, st.p0) else c for i, c in enumerate(st.x, 1))
    print(f"{marked:18s} A1={a1} A0={a0}")
print("A1 steps down", int(np.sum(np.diff(pr.A1) < 0)), "times")

###############################################################################
# Random round trips on a long string.

rng = np.random.default_rng(5)
x = "".join(rng.choice(["0", "1"], size=1024))
ref = bundle(x)
ok = sum(decode_unique2(delete(x, rng.choice(np.arange(1, 1025), 2, replace=False).tolist()), ref) == x
         for _ in range(200))
print(ok, "of 200 recovered")
