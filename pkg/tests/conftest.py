import pytest

from confmodel import builtin_metamodel, extract_text
from confmodel.fixtures.corpus import corpus, positive

# criterion number -> (passed, detail); filled in by test_acceptance
ACCEPTANCE = {}


@pytest.fixture(scope="session")
def mm():
    return builtin_metamodel()


@pytest.fixture(scope="session")
def fixture_models():
    return {f.id: extract_text(f.text(), f.vendor) for f in positive()}


@pytest.fixture(scope="session")
def list1_text():
    return next(f for f in corpus() if f.id == "list1").text()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")
