import random

import pytest

from sftgroups.classify import census, depth4_catalog, enumerate_minimal, verify_depth4

ACCEPTANCE_LINES = []


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=20240611, help="seed for randomized tests")


@pytest.fixture
def rng(request):
    return random.Random(request.config.getoption("--seed"))


@pytest.fixture(scope="session")
def minimal3():
    groups, count = enumerate_minimal(3)
    return groups


@pytest.fixture(scope="session")
def census2():
    return census(2)


@pytest.fixture(scope="session")
def census3():
    return census(3)


@pytest.fixture(scope="session")
def catalog():
    return depth4_catalog()


@pytest.fixture(scope="session")
def depth4_report():
    return verify_depth4()


@pytest.fixture(scope="session")
def acceptance():
    def record(criterion, ok, detail=""):
        line = f"criterion {criterion}: {'PASS' if ok else 'FAIL'}  {detail}".rstrip()
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
