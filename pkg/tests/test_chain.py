import pytest

from chain.services import (
    build_chain,
    ensure_budget,
    summarize,
    verify_closed_forms,
    verify_commuting,
    verify_rtt,
    verify_shift,
    verify_shift_action,
    verify_trace_consistency,
)
from core.exceptions import BudgetExceededError, PreconditionError
from exact.legmatrix import LegMatrix
from rmatrix.services import build
from solution.services import lyubashenko, mutate_sigma, trivial

def test_trivial_chain_all_pairs_commute():
    chain = build_chain(trivial(2), 3)
    check, pairs = verify_commuting(chain)
    assert check.passed
    assert pairs == 10

def test_lyubashenko_chain_commutes():
    check, _ = verify_commuting(build_chain(lyubashenko(3), 3))
    assert check.passed

def test_corrupted_chain_has_failing_pair():
    checks = [
        verify_commuting(build_chain(mutate_sigma(lyubashenko(3), x, y, v), 3, validate=False))[0]
        for x, y, v in [(0, 0, 2), (1, 2, 1), (2, 1, 0)]
    ]
    failed = [check for check in checks if not check.passed]
    assert failed
    assert failed[0].witness.note.startswith("k=")

def test_top_charge_is_the_shift():
    chain = build_chain(lyubashenko(2), 3)
    assert chain.t(3) == chain.shift
    assert chain.ham(3) == chain.shift
    # y_last = y_last + N has no solution mod 2 for odd N
    assert chain.t(0) == LegMatrix.zeros(3, 2)

@pytest.mark.parametrize("sol", [trivial(2), lyubashenko(2)], ids=["trivial2", "lyubashenko2"])
def test_rtt_two_sites(sol):
    assert verify_rtt(sol, 2).passed

@pytest.mark.parametrize("sol,sites", [(trivial(2), 3), (lyubashenko(2), 4), (lyubashenko(3), 3)], ids=["trivial2", "lyubashenko2", "lyubashenko3"])
def test_closed_forms(sol, sites):
    report = verify_closed_forms(build_chain(sol, sites))
    assert all(check.passed for check in report.checks())

def test_closed_forms_on_scaled_and_parity(scaled_solution, parity4):
    for sol in (scaled_solution, parity4):
        report = verify_closed_forms(build_chain(sol, 3))
        assert all(check.passed for check in report.checks()), sol.name

def test_short_chains_skip_what_needs_more_sites():
    report = verify_closed_forms(build_chain(trivial(2), 2))
    assert report.hNm2.skipped
    assert report.h1.passed and report.hNm1.passed

@pytest.mark.parametrize("sol", [lyubashenko(2), lyubashenko(3)], ids=["lyubashenko2", "lyubashenko3"])
def test_shift_action(sol):
    assert all(check.passed for check in verify_shift_action(build(sol), 4))

def test_shift_action_needs_four_sites():
    with pytest.raises(PreconditionError):
        verify_shift_action(build(trivial(2)), 3)

def test_trace_and_shift_checks():
    chain = build_chain(lyubashenko(3), 2)
    assert verify_trace_consistency(chain).passed
    assert all(check.passed for check in verify_shift(chain))

def test_budget_is_enforced():
    with pytest.raises(BudgetExceededError):
        build_chain(trivial(3), 8)
    with pytest.raises(BudgetExceededError):
        ensure_budget(2, 5, budget=16)
    ensure_budget(2, 4, budget=16)

def test_summary():
    chain = build_chain(trivial(2), 3)
    forms = verify_closed_forms(chain)
    summary = summarize(chain, 10, forms)
    assert summary.sites == 3 and summary.dim == 8
    assert summary.commuting_pairs_checked == 10
    assert summary.closed_forms["tN"]
