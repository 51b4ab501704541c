import warnings

import pytest

from sumdist.errors import RangeWarning

ACCEPTANCE_LINES = pytest.StashKey[list]()


@pytest.fixture
def quiet_range():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RangeWarning)
        yield


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line for an acceptance criterion, then assert it."""
    lines = request.config.stash.setdefault(ACCEPTANCE_LINES, [])

    def report(k: int, passed: bool, detail: str) -> None:
        line = f"ACCEPTANCE {k}: {'PASS' if passed else 'FAIL'} {detail}"
        lines.append(line)
        print(line)
        assert passed, line

    return report


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
