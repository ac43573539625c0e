import re
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

ACCEPTANCE = pytest.StashKey[dict]()


@pytest.fixture
def acceptance(request):
    """Dict of criterion -> PASS/FAIL line, printed after the run."""
    return request.config.stash.setdefault(ACCEPTANCE, {})


def _natural(key):
    # "8b.4" -> (8, "b", 4, "")
    return tuple(int(n) if n else s for n, s in re.findall(r"(\d+)|(\D+)", key))


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE, {})
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(lines, key=_natural):
        terminalreporter.write_line(lines[key])
