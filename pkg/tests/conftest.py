import sys
from pathlib import Path

import pytest

from semirec.semiring import BUILTIN_NAMES, builtin_semiring

sys.path.insert(0, str(Path(__file__).parent))

EXAMPLES = Path(__file__).resolve().parents[1] / "src" / "semirec" / "examples"


@pytest.fixture(params=BUILTIN_NAMES)
def semiring(request):
    return builtin_semiring(request.param)


@pytest.fixture
def nat():
    return builtin_semiring("natural")


@pytest.fixture
def examples_dir():
    return EXAMPLES


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    results = getattr(acceptance, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        terminalreporter.write_line(results[number])
