import pytest

from pyrlce.gf import field_new
from pyrlce.rng import make_rng


@pytest.fixture
def rng():
    return make_rng(20240601)


@pytest.fixture(params=[4, 8, 10])
def ctx(request):
    return field_new(request.param)


@pytest.fixture
def gf256():
    return field_new(8)


@pytest.fixture
def gf16():
    return field_new(4)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in module.RESULTS:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}  [{detail}]")
