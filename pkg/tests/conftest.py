import pytest

ACCEPTANCE = {}


@pytest.fixture
def record_criterion():
    """Store a one-line verdict that is echoed in the terminal summary."""

    def record(name, passed, detail):
        ACCEPTANCE[name] = f"{name} {'PASS' if passed else 'FAIL'}  {detail}"
        print(ACCEPTANCE[name])
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for name in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[name])
