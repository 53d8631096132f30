"""
Rank sequences and sketches
===========================

A bitstring is read together with two boundary bits, a 0 in front and a 1
at the end. The rank of a position is the number of runs seen so far, so
the rank sequence goes up by one at every change of bit.
"""

from twodel.core import rank_sequence
from twodel.sketch import SketchBundle, bundle, count_sketch, position_sketch, run_sketch

x = "001000111010"

# ranks include both boundaries: r_0 = 0 and r_{n+1} is the run count
print("x     ", x)
print("ranks ", rank_sequence(x).tolist())

###############################################################################
# The integer sketches. ``f1``/``f2`` weigh the positions of the ones;
# ``f1r``/``f2r``/``f3r`` weigh the ranks.

print(position_sketch(x))
print(run_sketch(x))
print(count_sketch(x))

###############################################################################
# A bundle keeps only the residues one decoder needs. The two-deletion
# bundle also carries XOR-folded block sketches over two block divisions,
# the second shifted by half a block.

b = bundle(x, "unique2")
for r in b.residues:
    print(f"{r.name:5s} {r.value:4d} mod {r.modulus}")
for blk in b.blocks:
    print(blk.division, "block length", blk.block_length, "f2r", blk.f2r, "f3r", blk.f3r)

# compact bit form, and the self-describing byte form
print(len(b.to_bits()), "bits:", b.to_bits())
raw = b.to_bytes()
assert SketchBundle.from_bytes(raw) == b
print(len(raw), "bytes:", raw.hex())
