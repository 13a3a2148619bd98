import contextlib

import pytest

_results = {}


@pytest.fixture
def criterion():
    """Record an acceptance criterion outcome for the terminal summary."""

    @contextlib.contextmanager
    def run(number, name):
        try:
            yield
        except BaseException:
            _results[number] = (name, False)
            raise
        _results[number] = (name, True)

    return run


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        name, ok = _results[number]
        terminalreporter.write_line(
            "criterion %2d  %-58s %s" % (number, name, "PASS" if ok else "FAIL")
        )
