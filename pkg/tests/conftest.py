import pytest

from teamsem.model import Structure


@pytest.fixture(scope="session")
def m2():
    """Universe {0, 1}, each element named by itself and by c<i>; no relations."""
    return Structure(("0", "1"), {}, {"0": "0", "1": "1", "c0": "0", "c1": "1"})


@pytest.fixture(scope="session")
def mr():
    """Universe {0, 1} with P = {0}."""
    return Structure(("0", "1"), {"P": (1, [("0",)])}, {"0": "0", "1": "1", "c0": "0", "c1": "1"})


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
