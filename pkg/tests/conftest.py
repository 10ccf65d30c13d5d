import pytest
from hypothesis import HealthCheck, settings

from rotor.examples import build

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def systems():
    ids = ("ex1", "ex2", "ex3", "ex4", "ex5", "ex5bis", "ex6", "drift", "mirror")
    return {i: build(i) for i in ids}


@pytest.fixture(scope="session")
def ex1(systems):
    return systems["ex1"]


@pytest.fixture(scope="session")
def ex2(systems):
    return systems["ex2"]


@pytest.fixture(scope="session")
def ex3(systems):
    return systems["ex3"]


@pytest.fixture(scope="session")
def ex4(systems):
    return systems["ex4"]


@pytest.fixture(scope="session")
def ex5(systems):
    return systems["ex5"]


CRITERIA: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def criterion():
    """Record one acceptance line; the assertion stays with the test."""

    def record(number: int, ok: bool, detail: str = "") -> bool:
        prev = CRITERIA.get(number, (True, ""))
        merged = (prev[0] and ok, "; ".join(x for x in (prev[1], detail) if x))
        CRITERIA[number] = merged
        print(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        ok, detail = CRITERIA[n]
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
