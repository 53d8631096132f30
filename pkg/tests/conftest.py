import random

import hypothesis.strategies as st
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, max_examples=200,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def bitstrings(min_size=0, max_size=32):
    return st.text(alphabet="01", min_size=min_size, max_size=max_size)


@st.composite
def with_deletions(draw, min_size=4, max_size=32, k=2):
    """A bitstring and ``k`` distinct 1-indexed positions to delete."""
    x = draw(bitstrings(min_size, max_size))
    pos = draw(st.lists(st.integers(1, len(x)), min_size=k, max_size=k, unique=True))
    return x, sorted(pos)


@pytest.fixture
def rng():
    return random.Random(20261016)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if not mod or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for criterion in sorted(mod.RESULTS):
        parts = mod.RESULTS[criterion]
        ok = all(p for p, _ in parts)
        terminalreporter.write_line(f"criterion {criterion}: {'PASS' if ok else 'FAIL'}")
        for p, detail in parts:
            terminalreporter.write_line(f"    {'ok  ' if p else 'FAIL'} {detail}")
