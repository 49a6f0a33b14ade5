"""Acceptance suite: one test per criterion, one PASS/FAIL line each."""

import json

import pytest

from simplex_lab.checks import CHECKS, run_check


@pytest.mark.parametrize("check", CHECKS, ids=[c.short_id for c in CHECKS])
def test_acceptance(check, capsys):
    result = run_check(check)
    status = "PASS" if result.status == "pass" else "FAIL"
    budget = f" budget {check.budget_seconds:g}s" if check.budget_seconds is not None else ""
    with capsys.disabled():
        print(f"\n{status} {check.id}: {check.paper_ref} ({result.seconds:.2f}s{budget})")
    assert result.status == "pass", json.dumps(result.detail, default=str)[:4000]
