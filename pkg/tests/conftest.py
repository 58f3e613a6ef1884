import pytest

from tamegroup.poly import PolyRing


@pytest.fixture
def R2():
    return PolyRing(["X", "Y"])


@pytest.fixture
def R3():
    return PolyRing(["X", "Y", "Z"])


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance():
    def record(criterion: str, ok: bool, detail: str = ""):
        line = f"criterion {criterion}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
