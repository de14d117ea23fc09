import pytest

from core.exceptions import InvalidSolutionError
from exact.legmatrix import LegMatrix, permutation_operator
from exact.poly import Poly
from rmatrix.services import (
    build,
    build_unchecked,
    verify_bundle_invariants,
    verify_dual_forms,
    verify_hecke,
    verify_spectral,
    verify_unitarity,
)
from solution.services import lyubashenko, mutate_sigma, trivial

def test_trivial_solution_gives_yang_r_matrix():
    bundle = build(trivial(2))
    assert bundle.check_const == permutation_operator(2)
    assert bundle.r_const == LegMatrix.identity(2, 2)
    assert bundle.r_spec == LegMatrix.identity(2, 2).scale(Poly.lam()) + permutation_operator(2)

def test_lyubashenko_check_matrix_is_an_involution():
    bundle = build(lyubashenko(2))
    assert bundle.check_const != permutation_operator(2)
    assert bundle.check_const @ bundle.check_const == LegMatrix.identity(2, 2)

@pytest.mark.parametrize("sol", [trivial(3), lyubashenko(3)], ids=["trivial3", "lyubashenko3"])
def test_constant_identities(sol):
    bundle = build(sol)
    assert verify_dual_forms(bundle).passed
    assert all(check.passed for check in verify_bundle_invariants(bundle))

def test_build_rejects_invalid_tables():
    broken = mutate_sigma(lyubashenko(3), 0, 0, 2)
    with pytest.raises(InvalidSolutionError):
        build(broken)
    assert build_unchecked(broken).check_const.nnz == 9

@pytest.mark.parametrize("sol,sites", [(trivial(2), 3), (lyubashenko(3), 3)], ids=["trivial2", "lyubashenko3"])
def test_hecke_relations(sol, sites):
    assert all(check.passed for check in verify_hecke(build(sol), sites))

def test_hecke_on_four_sites(scaled_solution):
    checks = verify_hecke(build(scaled_solution), 4)
    assert [check.check for check in checks] == ["hecke_braid", "hecke_commute", "hecke_quadratic"]
    assert all(check.passed for check in checks)

@pytest.mark.parametrize("sol", [trivial(2), lyubashenko(2), lyubashenko(3)], ids=["trivial2", "lyubashenko2", "lyubashenko3"])
def test_spectral_identities(sol):
    report = verify_spectral(build(sol), bound=3)
    failed = [check.check for check in report.checks() if not check.passed]
    assert failed == []

def test_ybe_detects_corruption():
    broken = build_unchecked(mutate_sigma(lyubashenko(3), 0, 0, 2))
    report = verify_spectral(broken, bound=2)
    assert not report.ybe_braid.passed
    assert report.ybe_braid.witness.point is not None

def test_unitarity_alone(scaled_solution):
    check = verify_unitarity(build(scaled_solution))
    assert check.passed
    assert check.anchor == "R12(λ)R21(−λ) = (1−λ²)I"
