import contextlib
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

ACCEPTANCE = pytest.StashKey[dict]()


@pytest.fixture
def criterion(request):
    """Context manager recording a pass/fail line for an acceptance criterion."""
    results = request.config.stash.setdefault(ACCEPTANCE, {})

    @contextlib.contextmanager
    def record(label):
        results[label] = "FAIL"
        yield
        results[label] = "PASS"

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = config.stash.get(ACCEPTANCE, None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(results, key=lambda s: int(s.split()[0])):
        terminalreporter.write_line(f"{results[label]}  {label}")
