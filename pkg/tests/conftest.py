import numpy as np
import pytest
from hypothesis import HealthCheck, settings

# derandomized so repeated runs exercise the same examples
settings.register_profile(
    "repo", derandomize=True, deadline=None, max_examples=200, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("repo")


@pytest.fixture
def rng():
    return np.random.default_rng(20240517)


# acceptance verdicts, filled in by test_acceptance.py and echoed in the summary
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
