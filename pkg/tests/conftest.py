import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))


def random_points(n, seed):
    return [tuple(map(float, p)) for p in np.random.default_rng(seed).random((n, 2))]


@pytest.fixture
def pentagon_plus_center():
    import math

    pts = [(0.0, 0.0)]
    pts += [(math.cos(0.1 + 2 * math.pi * i / 5), math.sin(0.1 + 2 * math.pi * i / 5)) for i in range(5)]
    return pts


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "VERDICTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
