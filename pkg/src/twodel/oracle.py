"""Brute-force references: decoding by filtering, greedy codes, LCS checks.

Everything here is exponential or quadratic on purpose and guarded against
sizes where it would not finish.
"""

from collections import defaultdict
from collections.abc import Iterable
from dataclasses import dataclass
from itertools import combinations, product

from .core import subsequences, supersequences
from .decode1 import decode_run1, decode_vt
from .decode2_list import decode_list2
from .decode2_unique import decode_unique2
from .errors import DecodeFailure
from .sketch import CodeParams, SketchBundle, bundle, matches

MAX_GREEDY_N = 16
MAX_GRID_N = 16
DELETIONS = {"vt1": 1, "run1": 1, "list2": 2, "unique2": 2}


def brute_decode(y: str, ref: SketchBundle) -> set:
    """Every supersequence of ``y`` of length ``ref.n`` whose bundle is ``ref``."""
    k = ref.n - len(y)
    if k < 0:
        raise ValueError("y is longer than the bundle's string length")
    return {x for x in supersequences(y, k) if matches(x, ref)}


def lcs_dp(a: str, b: str) -> int:
    """Longest common subsequence length, textbook quadratic table."""
    prev = [0] * (len(b) + 1)
    for ca in a:
        cur = [0]
        for j, cb in enumerate(b):
            cur.append(prev[j] + 1 if ca == cb else max(prev[j + 1], cur[j]))
        prev = cur
    return prev[-1]


def lcs_bits(a: str, b: str) -> int:
    """Longest common subsequence length with the bit-vector recurrence."""
    if not a or not b:
        return 0
    full = (1 << len(a)) - 1
    masks = {"0": 0, "1": 0}
    for i, c in enumerate(a):
        masks[c] |= 1 << i
    v = full
    for c in b:
        u = v & masks[c]
        v = ((v + u) | (v - u)) & full
    return len(a) - bin(v).count("1")


def verify_code(code: Iterable[str], k: int) -> bool:
    """True iff every pair of distinct codewords has LCS below ``n - k``."""
    words = sorted(set(code))
    if not words:
        return True
    n = len(words[0])
    if any(len(w) != n for w in words):
        raise ValueError("codewords must share one length")
    return all(lcs_bits(a, b) < n - k for a, b in combinations(words, 2))


def greedy_code(n: int, k: int) -> set:
    """Scan ``{0,1}^n`` in lexicographic order, keeping words whose
    ``k``-deletion balls miss every ball kept so far."""
    if n > MAX_GREEDY_N:
        raise ValueError(f"greedy_code is limited to n <= {MAX_GREEDY_N}")
    taken = set()
    code = set()
    for bits in product("01", repeat=n):
        x = "".join(bits)
        ball = subsequences(x, k)
        if taken.isdisjoint(ball):
            code.add(x)
            taken |= ball
    return code


def shard_of(x: str, count: int) -> int:
    """Deterministic shard of ``x`` by its leading bits."""
    if count <= 1:
        return 0
    b = (count - 1).bit_length()
    head = x[:b].ljust(b, "0")
    return int(head, 2) % count


def _decode(variant: str, y: str, ref: SketchBundle):
    if variant == "vt1":
        return {decode_vt(y, ref["f1"])}
    if variant == "run1":
        return {decode_run1(y, ref["f1r"])}
    if variant == "list2":
        return set(decode_list2(y, ref))
    return {decode_unique2(y, ref)}


@dataclass
class GridReport:
    variant: str
    n: int
    cases: int = 0
    failures: int = 0
    max_list: int = 0
    first_failure: tuple | None = None

    @property
    def ok(self) -> bool:
        return self.failures == 0


def check_grid(variant: str, n: int, shard: int = 0, shards: int = 1) -> GridReport:
    """Compare the structured decoder with :func:`brute_decode` on every
    ``(x, deletion pattern)`` of length ``n``.

    Works per received string ``y``: its supersequences are grouped by
    bundle, and each group must equal what the decoder returns. Unique
    variants additionally require every group to be a single string.
    """
    if n > MAX_GRID_N:
        raise ValueError(f"exhaustive grids are limited to n <= {MAX_GRID_N}")
    k = DELETIONS[variant]
    params = CodeParams(n)
    report = GridReport(variant, n)
    if n < k:
        return report
    for bits in product("01", repeat=n - k):
        y = "".join(bits)
        if shard_of(y, shards) != shard:
            continue
        groups = defaultdict(set)
        for x in supersequences(y, k):
            groups[bundle(x, variant, params)].add(x)
        for ref, xs in groups.items():
            report.cases += len(xs)
            report.max_list = max(report.max_list, len(xs))
            try:
                got = _decode(variant, y, ref)
            except DecodeFailure as exc:
                got = exc
            bad = got != xs or (variant != "list2" and len(xs) != 1)
            if bad:
                report.failures += 1
                if report.first_failure is None:
                    report.first_failure = (y, sorted(xs), got)
    return report
