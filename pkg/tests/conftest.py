import pytest
from hypothesis import settings

from knotforge import census

settings.register_profile("knotforge", deadline=None, max_examples=60, derandomize=True)
settings.load_profile("knotforge")


@pytest.fixture(scope="session")
def trefoil():
    return census.build("3_1")


@pytest.fixture(scope="session")
def figure8():
    return census.build("4_1")


@pytest.fixture(scope="session")
def knots():
    return census.knots()


ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line for an acceptance criterion."""

    def record(number: int, ok: bool, detail: str) -> bool:
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE[number] = line
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[number])
