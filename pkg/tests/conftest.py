from __future__ import annotations

import random

import pytest
from hypothesis import strategies as st

from cograph.core import Cograph, all_pairs

POINTS = "PQRSTU"


def named_pattern(n: int, groups: list[str]) -> Cograph:
    """Cograph from classes written with point letters, e.g. ["QU RT", "PU RS"].

    Pairs not mentioned get classes of their own.
    """
    labels = {}
    for k, group in enumerate(groups):
        for tok in group.split():
            i, j = sorted(POINTS.index(ch) for ch in tok)
            labels[(i, j)] = ("g", k)
    for p in all_pairs(n):
        labels.setdefault(p, ("s", p))
    return Cograph.from_labels(n, labels)


@st.composite
def cographs(draw, min_points: int = 2, max_points: int = 6):
    n = draw(st.integers(min_points, max_points))
    pairs = all_pairs(n)
    labels = draw(st.lists(st.integers(0, len(pairs) - 1), min_size=len(pairs), max_size=len(pairs)))
    return Cograph.from_labels(n, dict(zip(pairs, labels)))


@pytest.fixture
def rng():
    return random.Random(20240601)


# the worked six-point candidates, points P..U = 0..5
CANDIDATE_1 = ["QU RT", "PU RS", "PS QR", "PT QS"]
CANDIDATE_2 = ["PQ TU", "PT RS", "PS QR", "QU RT"]
CANDIDATE_3 = ["PQ RS", "PR QU", "PT SU", "QR ST"]
CANDIDATE_4 = ["PQ RS", "PR QS", "QR TU", "QT RU"]


# criterion number -> (passed, detail), filled by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}" + (f"  ({detail})" if detail else ""))
