import pytest

from helpers import e1, e2

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def net_e1():
    net = e1()
    return net, net.marking({"p": 1})


@pytest.fixture
def net_e2():
    net = e2()
    return net, net.marking({"p1": 1})


@pytest.fixture
def record_criterion():
    def record(name: str, ok: bool, detail: str = "") -> None:
        ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  ({detail})" if detail else ""))

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
