import pytest

_LINES = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_LINES] = []


@pytest.fixture
def record(request):
    """Call as ``record(number, passed, detail)`` to log one acceptance line."""
    lines = request.config.stash[_LINES]

    def add(number, passed, detail):
        lines.append((number, passed, detail))
        print(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}")

    return add


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash[_LINES]
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for number, passed, detail in sorted(lines):
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}")
