import pytest

from halfflip.words import M_SPEC, fixed_point_prefix, validate_morphism

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def m_prefix_100k():
    return fixed_point_prefix(M_SPEC, 10**5)


@pytest.fixture(scope="session")
def g3():
    """3-uniform morphism with pairwise distinct length-2 prefixes and suffixes."""
    return validate_morphism(["010", "021", "102"], name="g")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
