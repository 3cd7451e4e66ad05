import sys
import math

import numpy as np
import pytest

from fekete_szego.mclass import SectorAlpha
from fekete_szego.series import NormalizedSeries

ALPHAS = (math.pi / 2, 2 * math.pi / 3, 5 * math.pi / 6)


def random_normalized(rng: np.random.Generator, order: int = 12) -> NormalizedSeries:
    """Normalized series with tail coefficients uniform in the square [-1, 1]^2."""
    tail = rng.uniform(-1, 1, order - 1) + 1j * rng.uniform(-1, 1, order - 1)
    return NormalizedSeries.from_tail(tail, order)


@pytest.fixture(params=ALPHAS, ids=["pi/2", "2pi/3", "5pi/6"])
def sector(request):
    return SectorAlpha(request.param)


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in acceptance.summary_lines():
        terminalreporter.write_line(line)
