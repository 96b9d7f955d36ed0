import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from randmaps import catalog  # noqa: E402
from randmaps.model import build_kernel, classify_kernel  # noqa: E402


@pytest.fixture
def vino():
    return catalog.vinokourov()


@pytest.fixture
def nonh():
    return catalog.non_h_example()


@pytest.fixture
def trunc():
    return catalog.counterexample_truncated(4)


def random_irreducible(seed, count, aperiodic=False, **kw):
    """Deterministic list of random systems with irreducible (optionally aperiodic) kernels."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        s = catalog.random_system(rng, **kw)
        cls = classify_kernel(build_kernel(s))
        if cls.irreducible and (cls.aperiodic or not aperiodic):
            out.append(s)
    return out


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
