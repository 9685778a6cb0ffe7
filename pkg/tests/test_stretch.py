"""Larger reference checks beyond the acceptance set."""
from __future__ import annotations

import pytest

from flaghom.verify import suite_e6, suite_e7


@pytest.mark.slow
def test_e6_all_subsets():
    res = suite_e6("auto")
    assert res.ok, "\n".join(res.lines())
    assert sum(len(a.theta) < 6 for a in res.audits) == 63


def test_e7_closed_forms_against_top_degrees():
    # Two reference rows give top degrees 59 and 58 where the product
    # formulas for the same types have degree 57; the two reference tables
    # cannot both be right, and the group is too large to settle it here.
    res = suite_e7()
    failing = {r.name for r in res.rows if not r.ok}
    assert failing == {"A1xA1", "A2xA1"}
    assert len(res.rows) == 33
