"""
From message to codeword and back
=================================

A message index becomes a regular payload (every long enough window holds
both 00 and 11), the payload's bundle is framed into a middle segment, and
that segment's bundle is sent three times per bit.
"""

import random

from twodel.codec import decode_codeword, encode_message, layout, redundancy_report
from twodel.core import delete
from twodel.regular import RegularCodebook, is_regular
from twodel.sketch import CodeParams

n = 256
p = CodeParams(n)
book = RegularCodebook.for_params(p)
print(f"n={n}: blocks of {book.delta} bits, {book.m} blocks, {book.residual_bits} free bits")
print(f"log2 M = {book.size.bit_length() - 1}")

rng = random.Random(3)
msg = rng.randrange(book.size)
word = encode_message(msg, p)
print("payload regular:", is_regular(word.payload))
print("segments:", len(word.payload), len(word.middle), len(word.tail), "total", len(word))

###############################################################################
# Two deletions anywhere, including one in the payload and one in the tail.

lay = layout(n)
for pos in ({5, 300}, {n + 3, n + 4}, {1, lay.total}):
    assert decode_codeword(delete(word.bits, pos), p) == msg
    print("deleted", sorted(pos), "-> recovered")

###############################################################################
# Redundancy grows like 4 log2 n plus a slowly growing term.

for row in redundancy_report([2 ** e for e in range(10, 21, 2)]):
    print(f"n=2^{row.n.bit_length() - 1:2d} redundancy {row.redundancy} ratio {row.ratio:.1f}")
