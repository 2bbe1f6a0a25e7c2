import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("hstlab", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("hstlab")

from hstlab.document import load_example  # noqa: E402


@pytest.fixture(scope="session")
def examples():
    return {name: load_example(name) for name in ("r8", "su3", "s3t5")}


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[number])
