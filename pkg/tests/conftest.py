import pytest

from trisect.cli import load_builtin


@pytest.fixture(scope="session")
def b4():
    return load_builtin("b4")


@pytest.fixture(scope="session")
def s2xs2():
    return load_builtin("s2xs2-punctured")


@pytest.fixture(scope="session")
def s2xs2_fixed():
    return load_builtin("s2xs2-punctured-corrected")


@pytest.fixture(scope="session")
def closed_trivial():
    return load_builtin("closed-trivial")


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
