import json
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from kae.bundled import fixture_path  # noqa: E402
from kae.config import RunConfig  # noqa: E402
from kae.ingest import AlignedPair, AlignmentResult, load_gold, load_kg  # noqa: E402

TRAINING_FIXTURES = ("biblio_mini", "event_mini", "uni_mini")
ALL_PAIRS = ("conf_mini",) + TRAINING_FIXTURES


def fixture_doc(name):
    return json.loads(fixture_path(name).read_text(encoding="utf-8"))


def load_pair(name):
    return (
        load_kg(fixture_path(f"{name}_ref.json")),
        load_kg(fixture_path(f"{name}_cand.json")),
        load_gold(fixture_path(f"{name}_gold.json")),
    )


def alignment_of(ref, cand, pairs):
    """An alignment that marks exactly the given (ref, cand) etype pairs."""
    return AlignmentResult(ref.name, cand.name, [AlignedPair(r, c, "etype", 1.0, True, {}) for r, c in pairs])


def gold_alignment(ref, cand, gold):
    return alignment_of(ref, cand, [(r, c) for r, c, _ in gold.of_kind("etype").pairs])


@pytest.fixture
def cfg():
    return RunConfig(jobs=1)


@pytest.fixture(scope="session")
def conf():
    return load_pair("conf_mini")


# --- acceptance summary -------------------------------------------------------------

_criteria: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion n")


def pytest_runtest_logreport(report):
    marker = dict(report.user_properties).get("criterion")
    if marker is None:
        return
    n, title = marker
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        elapsed = dict(report.user_properties).get("elapsed")
        detail = f"{title} ({elapsed:.2f} s)" if elapsed is not None else title
        _criteria[n] = ("PASS" if report.passed else "FAIL", detail)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        verdict, detail = _criteria[n]
        terminalreporter.write_line(f"criterion {n}: {verdict} {detail}")


@pytest.fixture(autouse=True)
def _criterion_properties(request):
    marker = request.node.get_closest_marker("criterion")
    if marker is not None:
        request.node.user_properties.append(("criterion", tuple(marker.args)))
    yield
