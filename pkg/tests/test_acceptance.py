"""Acceptance suite: one pass/fail line per criterion.

Run directly (``python tests/test_acceptance.py``) or under pytest, where each
criterion is its own test and its line is printed even with output capture.
"""

from __future__ import annotations

import sys

import pytest

from fracwave.verify import CHECKS


@pytest.mark.slow
@pytest.mark.parametrize("number", sorted(CHECKS))
def test_criterion(number, capsys):
    result = CHECKS[number]()
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.line()


if __name__ == "__main__":
    results = [CHECKS[n]() for n in sorted(CHECKS)]
    for r in results:
        print(r.line(), flush=True)
    sys.exit(0 if all(r.passed for r in results) else 1)
