from __future__ import annotations

import re
import sys

import pytest
from hypothesis import settings

import orbitcodes.orbit as orbit_mod

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

# (q, n, wd) for every distribution computed during the session
CHECKED_DISTRIBUTIONS: list = []
_CRITERIA: dict[int, tuple[str, str]] = {}
_SESSION_WIDE = ("test_criterion_09", "test_criterion_10")

_original_check = orbit_mod.check_distribution


def record(q: int, n: int, wd) -> None:
    CHECKED_DISTRIBUTIONS.append((q, n, wd))


def _recording_check(wd):
    field = sys._getframe(1).f_locals.get("field")
    if field is not None:
        record(field.q, field.n, wd)
    _original_check(wd)


orbit_mod.check_distribution = _recording_check


def pytest_collection_modifyitems(session, config, items):
    # the invariant criteria inspect everything computed before them
    items.sort(key=lambda it: it.name.startswith(_SESSION_WIDE))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = re.match(r"test_criterion_(\d+)", item.name)
    if not m or rep.when not in ("setup", "call"):
        return
    num = int(m.group(1))
    doc = (item.function.__doc__ or "").strip().splitlines()
    title = doc[0] if doc else item.name
    if rep.when == "call" or rep.failed:
        status = "PASS" if rep.passed else "FAIL"
        if _CRITERIA.get(num, ("PASS",))[0] == "FAIL":
            status = "FAIL"
        _CRITERIA[num] = (status, title)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        status, title = _CRITERIA[num]
        terminalreporter.write_line(f"criterion {num:2d}: {status}  {title}")
