import random

import pytest

from seqsig.groups import suite_generate

# one line per acceptance criterion, echoed after the test summary so the
# verdicts are visible without -s
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)


@pytest.fixture
def mock_suite():
    return suite_generate("mock", 10007)


@pytest.fixture
def tiny_suite():
    return suite_generate("mock", 101)


@pytest.fixture(scope="session")
def real_suite():
    return suite_generate("real")


class SharedStream:
    """RNG facade drawing the same exponent values regardless of the group
    order it is asked for, so mock and real transcripts can share one
    randomness stream. Draws are capped below 2^31 - 1, which is a valid
    scalar for every suite the tests use (the mock equivalence suite runs
    at exactly that prime order).
    """

    CAP = (1 << 31) - 2

    def __init__(self, seed):
        self._rng = random.Random(seed)

    def randrange(self, start, stop=None):
        if stop is None:
            start, stop = 0, start
        span = min(stop - start, self.CAP)
        return start + self._rng.randrange(span)
