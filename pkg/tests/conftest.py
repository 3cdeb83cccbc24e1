from __future__ import annotations

import random

import pytest

from metabelian.group import GroupElement, GroupSpec, evaluate_word


def random_word(spec: GroupSpec, rng: random.Random, length: int) -> list[tuple[int, int]]:
    return [(rng.randrange(spec.k + 1), rng.choice((-1, 1))) for _ in range(length)]


def random_element(spec: GroupSpec, rng: random.Random, max_length: int = 12) -> GroupElement:
    return evaluate_word(spec, random_word(spec, rng, rng.randint(0, max_length)))


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    rows = []
    for outcome in ("passed", "failed"):
        for report in terminalreporter.stats.get(outcome, []):
            if report.when == "call" and "test_acceptance" in report.nodeid:
                rows.append((report.nodeid.split("::")[-1], outcome, report.duration))
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome, duration in sorted(rows):
        mark = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{mark}  {name}  ({duration:.2f}s)")
