"""The twelve acceptance criteria at their stated tolerances and time budgets.

Each test records one ``criterion N PASS|FAIL ...`` line; the lines are
printed together in the terminal summary. A test asserts both the verdict
and the runtime budget.
"""

import pytest

from weakdiss.harness import CRITERIA, run_criterion

pytestmark = pytest.mark.acceptance


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda c: f"criterion{c.number:02d}")
def test_criterion(criterion, acceptance_lines):
    res = run_criterion(criterion)
    acceptance_lines.append(res.line())
    for rep in res.reports:
        print(rep.summary())
    passed, in_budget = res.passed, res.within_budget
    assert passed, res.line()
    assert in_budget, f"criterion {criterion.number} took {res.runtime_s:.1f}s, budget {criterion.budget_s:g}s"
