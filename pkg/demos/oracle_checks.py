"""
Brute-force references
======================

Small cases are checked against plain enumeration: decoding by filtering
every supersequence, and code verification by pairwise LCS.
"""

from itertools import product

from twodel.oracle import brute_decode, check_grid, greedy_code, lcs_bits, lcs_dp, verify_code
from twodel.sketch import bundle, position_sketch

x = "01101001"
y = "011001"
print("unique2 filter:", brute_decode(y, bundle(x, "unique2")))
print("list2 filter:  ", brute_decode(y, bundle(x, "list2")))

###############################################################################
# The bit-parallel LCS agrees with the table.

a, b = "110111101011", "111010111101"
print("LCS", lcs_dp(a, b), lcs_bits(a, b))

###############################################################################
# The VT class at n = 10 corrects one deletion; a greedy code is found by
# scanning in order and keeping words with disjoint deletion balls.

vt = [s for s in ("".join(t) for t in product("01", repeat=10)) if position_sketch(s).f1 % 11 == 0]
print(len(vt), "VT words, verified:", verify_code(vt, 1))
g = greedy_code(8, 1)
print(len(g), "greedy words, verified:", verify_code(g, 1))

###############################################################################
# One row of the exhaustive grid the acceptance suite runs.

r = check_grid("unique2", 9)
print(r.variant, "n =", r.n, "cases", r.cases, "failures", r.failures)
