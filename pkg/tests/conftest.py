"""Collects acceptance outcomes and prints one summary line per criterion."""

from __future__ import annotations

import pytest

OUTCOMES: dict[int, list[tuple[str, str, str]]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        if hasattr(rep, "wasxfail"):
            state = "xfail"
        else:
            state = rep.outcome
        seconds = dict(rep.user_properties).get("seconds", "")
        OUTCOMES.setdefault(mark.args[0], []).append((item.name, state, seconds))


def pytest_terminal_summary(terminalreporter):
    if not OUTCOMES:
        return
    terminalreporter.section("acceptance")
    for n in sorted(OUTCOMES):
        rows = OUTCOMES[n]
        failed = [name for name, state, _ in rows if state == "failed"]
        gaps = [name for name, state, _ in rows if state == "xfail"]
        timing = ", ".join(f"{s}s" for _, state, s in rows if s)
        if failed:
            line = f"criterion {n}: FAIL ({', '.join(failed)})"
        elif gaps:
            line = f"criterion {n}: FAIL, known gap as strict xfail ({', '.join(gaps)})"
        else:
            line = f"criterion {n}: PASS"
        terminalreporter.write_line(line + (f" [{timing}]" if timing else ""))
