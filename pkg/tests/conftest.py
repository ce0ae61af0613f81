from __future__ import annotations

import numpy as np
import pytest
from hypothesis import settings

from oracles import trial_division_primes

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture(scope="session")
def oracle_primes_1e5() -> np.ndarray:
    return np.array(trial_division_primes(10**5), dtype=np.int64)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
