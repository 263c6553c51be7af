from pathlib import Path

import pytest

from jordext.scalars import Field

DATA = Path(__file__).parent / "data"

# criterion number -> (passed, detail); filled by test_acceptance
ACCEPTANCE = {}


@pytest.fixture
def data():
    return DATA


@pytest.fixture(params=[3, 5], ids=["GF3", "GF5"])
def gf(request):
    return Field.gf(request.param)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
