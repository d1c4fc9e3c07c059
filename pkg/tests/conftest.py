import pytest

from quotarith import _kernels

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(params=["numba", "numpy"])
def backend(request):
    previous = _kernels.get_backend()
    _kernels.set_backend(request.param)
    yield request.param
    _kernels.set_backend(previous)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
