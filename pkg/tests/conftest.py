from __future__ import annotations

import pytest

from mutinv.config import checking
from mutinv.matrix import validate


def B_of(x1: int, x2: int, x3: int):
    """The 3x3 family with skew-symmetrizer (1, 2, 3)."""
    return validate([[0, 2 * x1, 3 * x2], [-x1, 0, 3 * x3], [-x2, -2 * x3, 0]])


@pytest.fixture(autouse=True)
def _cross_checks():
    # test builds run both mutation formulas and both determinant routes
    with checking(mutation=True, delta=True):
        yield


_criteria: list[tuple[str, bool, str]] = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line; call with (ok, detail)."""
    name = request.node.name

    def record(ok: bool, detail: str = "") -> None:
        _criteria.append((name, ok, detail))

    return record


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _criteria:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
