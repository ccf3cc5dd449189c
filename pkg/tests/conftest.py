import pytest

from dagreduce.graph import WeightedDag
from dagreduce.instances import CnfFormula, Literal, SubsetSumInstance


@pytest.fixture
def paper_a():
    return SubsetSumInstance([4, 2, -5])


@pytest.fixture
def zero_a():
    return SubsetSumInstance([4, 2, -6])


@pytest.fixture
def paper_phi():
    # (a | b | -c) & (d | -a) & (-a | -d | c) with a=1, b=2, c=3, d=4
    return CnfFormula(4, [[1, 2, -3], [4, -1], [-1, -4, 3]])


@pytest.fixture
def triangle():
    return WeightedDag(3, [(0, 1, 0), (1, 2, 0), (0, 2, 0)], 0, 2)


def lit(code: int) -> Literal:
    return Literal.from_dimacs(code)


ACCEPTANCE_RESULTS: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        passed, detail = ACCEPTANCE_RESULTS[number]
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {detail}")
