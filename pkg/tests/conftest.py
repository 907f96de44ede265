import pytest
from hypothesis import settings

from hyperint import _kernels

settings.register_profile("default", deadline=None)
settings.load_profile("default")

_ACCEPTANCE_LINES = []


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line for the acceptance summary."""

    def record(number, title, ok, detail=""):
        status = "PASS" if ok else "FAIL"
        line = f"[{status}] criterion {number:>2}: {title}"
        if detail:
            line += f" ({detail})"
        _ACCEPTANCE_LINES.append((number, line))
        return ok

    return record


@pytest.fixture(params=sorted(_kernels.available_backends()))
def backend(request):
    return _kernels.available_backends()[request.param]


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(_ACCEPTANCE_LINES):
        terminalreporter.write_line(line)
    terminalreporter.write_line(f"kernel backend: {_kernels.BACKEND}")
