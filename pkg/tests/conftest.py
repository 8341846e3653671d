from __future__ import annotations

import random

import pytest

from eislat.eisenstein import EisensteinInt


@pytest.fixture
def rng():
    return random.Random(20240611)


def rand_eis(rng: random.Random, lo: int = -50, hi: int = 50) -> EisensteinInt:
    return EisensteinInt(rng.randint(lo, hi), rng.randint(lo, hi))


@pytest.fixture(scope="session")
def lambda_boundary():
    """Cusp classes and hyperplane records of Lambda, computed once per session (minutes)."""
    from eislat import boundary

    classes, cusp_report = boundary.classify_cusps(4)
    a5_side = [c for c in classes if c.roots == max(x.roots for x in classes)]
    prefer = [v for c in a5_side for v in c.representatives]
    records, hyp_report = boundary.find_hyperplanes(12, 40, prefer=prefer)
    return {
        "classes": classes,
        "cusp_report": cusp_report,
        "records": records,
        "hyperplane_report": hyp_report,
    }


# acceptance criteria summary -------------------------------------------------

_CRITERIA: dict[int, tuple[str, list[str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): an acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or (rep.when != "call" and not rep.failed):
        return
    n, title = mark.args
    status = "PASS" if rep.passed else "FAIL"
    prev = _CRITERIA.get(n)
    if prev is None or status == "FAIL":
        notes = [s for name, s in rep.user_properties if name == "note"] if hasattr(rep, "user_properties") else []
        _CRITERIA[n] = (f"{status}  criterion {n:>2}: {title}", notes)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        line, notes = _CRITERIA[n]
        terminalreporter.write_line(line)
        for note in notes:
            terminalreporter.write_line(f"        {note}")
