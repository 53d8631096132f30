"""
Lists of at most two
====================

With ``f1r``, ``f2r`` and the run count, two deletions can be undone up to
a list of size two. This script finds every length-7 pair that the list
decoder cannot separate, then shows one of them.
"""

from collections import defaultdict
from itertools import product

from twodel.core import subsequences
from twodel.decode2_list import decode_list2
from twodel.sketch import bundle

n = 7
groups = defaultdict(set)
for bits in product("01", repeat=n):
    x = "".join(bits)
    for y in subsequences(x, 2):
        groups[(y, bundle(x, "list2"))].add(x)

pairs = sorted({(y, tuple(sorted(xs))) for (y, _), xs in groups.items() if len(xs) == 2})
print(len(pairs), "received strings with a list of two at n = 7")
for y, xs in pairs[:5]:
    print(" ", y, "->", xs)

###############################################################################
# The decoder returns the same list, and never more than two strings.

y, (a, b) = pairs[0]
print(decode_list2(y, bundle(a, "list2")))
assert max(len(xs) for xs in groups.values()) == 2
