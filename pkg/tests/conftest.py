import pytest

from helpers import i2_surface, irreducible_surface


@pytest.fixture
def i2():
    return i2_surface()


@pytest.fixture
def irreducible():
    return irreducible_surface()


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is not None and getattr(mod, "RESULTS", None):
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
