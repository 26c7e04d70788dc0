"""The nine acceptance criteria with their runtime budgets (seconds)."""

import time

import pytest

from lasagna.acceptance import CRITERIA

BUDGETS = {1: 1, 2: 60, 3: 120, 4: 120, 5: 300, 6: 120, 7: 600, 8: 30, 9: None}


@pytest.mark.parametrize("number", sorted(BUDGETS))
def test_criterion(number, acceptance_lines):
    start = time.perf_counter()
    result = CRITERIA[number - 1]()
    elapsed = time.perf_counter() - start
    budget = BUDGETS[number]
    in_budget = budget is None or elapsed < budget
    line = result.line()
    if not in_budget:
        line += f" (over budget: {elapsed:.1f}s >= {budget}s)"
    acceptance_lines.append(line)
    print(line)
    assert result.passed, result.detail
    assert in_budget
