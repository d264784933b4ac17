import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from quiverlab.corpus import corpus_entry  # noqa: E402

ACCEPTANCE = {}


@pytest.fixture
def entry():
    return lambda name: corpus_entry(name).value


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line("criterion %2d: %s  %s" % (k, "PASS" if ok else "FAIL", detail))
