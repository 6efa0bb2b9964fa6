import os
import sys

import pytest

from chordcount.chordseries import ChordSeries
from chordcount.qcurve import solve_hierarchy

SLOW = os.environ.get("CHORDCOUNT_SLOW") == "1"


@pytest.fixture(scope="session")
def cs():
    return ChordSeries()


@pytest.fixture(scope="session")
def hierarchy():
    # b <= 6 and t^12 covers every chi <= 4, k <= 6 comparison
    return solve_hierarchy(6, 12)


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("CHORDCOUNT_CACHE_DIR", str(tmp_path / "cache"))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
