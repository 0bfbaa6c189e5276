import json
import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

from wildmono import fixture_path  # noqa: E402
from wildmono.stablegraph import StableGraph  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def load_graph(name):
    with open(fixture_path(name)) as fh:
        return StableGraph.from_json(json.load(fh))


@pytest.fixture
def graph():
    return load_graph


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
