from fractions import Fraction

import pytest
from hypothesis import given, settings as hsettings, strategies as st

from chain.services import build_chain
from core.exceptions import CocycleError, DimensionMismatchError, MalformedInputError, NotAutomorphismError, PreconditionError
from exact.legmatrix import LegMatrix
from exact.poly import Poly
from solution.services import lyubashenko, trivial
from symmetry.schemas import DiagonalSymmetry
from symmetry.services import (
    cocycle_lattice,
    cocycle_violation,
    central_symmetry,
    elementary_sum,
    site_sum,
    solve_cocycle,
    SymmetryService,
)

def _service(sol, sites):
    return SymmetryService(build_chain(sol, sites))

def _all_passed(report):
    return all(check.passed for check in report.checks())

# Lifts of one-site matrices

def test_identity_lifts_everywhere():
    report = _service(lyubashenko(2), 3).lift_check(LegMatrix.identity(1, 2))
    assert all(check.passed for check in report.checks())
    assert report.per_k == [True] * 4

@given(st.lists(st.integers(-3, 3), min_size=4, max_size=4))
@hsettings(max_examples=15, deadline=None)
def test_every_matrix_lifts_for_the_trivial_solution(values):
    B = LegMatrix(1, 2, {(i // 2, i % 2): v for i, v in enumerate(values)})
    report = SymmetryService(build_chain(trivial(2), 2)).lift_check(B)
    assert report.rsym.passed and report.tsym.passed
    assert all(report.per_k)

def test_non_symmetric_matrix_fails_for_lyubashenko():
    B = LegMatrix(1, 2, {(0, 0): 1, (0, 1): 1, (1, 1): 1})
    report = _service(lyubashenko(2), 2).lift_check(B)
    assert not report.rsym.passed
    assert report.rsym.witness is not None
    assert report.tsym.skipped

def test_lift_rejects_bad_shapes():
    service = _service(trivial(2), 2)
    with pytest.raises(DimensionMismatchError):
        service.lift_check(LegMatrix.identity(1, 3))
    with pytest.raises(PreconditionError):
        service.lift_check(LegMatrix(1, 2, {(0, 0): Poly.lam()}))

# Cocycle weights

def test_lyubashenko_two_lattice():
    rank, torsion, kernel, _ = cocycle_lattice(lyubashenko(2))
    assert rank == 1
    assert torsion == [2]
    assert kernel == [[1, 1]]

def test_solve_cocycle_instances_satisfy_the_condition():
    sol = lyubashenko(2)
    result = solve_cocycle(sol, [0, 1])
    assert result.free_rank == 1
    assert result.instantiations[0].alpha == (Fraction(2), Fraction(2))
    assert len(result.sign_characters) == 3
    for sym in result.symmetries():
        assert cocycle_violation(sol, sym.alpha) is None

def test_trivial_solution_has_full_free_rank():
    result = solve_cocycle(trivial(3), [0, 1, 2])
    assert result.free_rank == 3
    assert result.torsion == []
    # three single primes plus their product
    assert len(result.instantiations) == 4

def test_solve_cocycle_needs_an_automorphism():
    with pytest.raises(NotAutomorphismError):
        solve_cocycle(lyubashenko(2), [0, 0])

# M-symmetries

@pytest.mark.parametrize("f", [[0, 1], [1, 0]])
def test_m_symmetry_with_admissible_weights(f):
    service = _service(lyubashenko(2), 3)
    report = service.verify_m_symmetry(DiagonalSymmetry(f=f, alpha=[3, 3]))
    assert _all_passed(report)
    assert report.entries[0].per_k == [True] * 4

def test_m_symmetry_rejects_cocycle_violation():
    service = _service(lyubashenko(2), 2)
    with pytest.raises(CocycleError, match=r"\(x, y\) = \(0, 0\)"):
        service.verify_m_symmetry(DiagonalSymmetry(f=[0, 1], alpha=[1, 2]))

def test_m_symmetry_input_errors():
    service = _service(lyubashenko(2), 2)
    with pytest.raises(MalformedInputError):
        service.verify_m_symmetry(DiagonalSymmetry(f=[0, 1, 2], alpha=[1, 1, 1]))
    with pytest.raises(NotAutomorphismError):
        service.verify_m_symmetry(DiagonalSymmetry(f=[1, 1], alpha=[1, 1]))
    with pytest.raises(ValueError):
        DiagonalSymmetry(f=[0, 1], alpha=[1, 0])

def test_character_sweep(parity4):
    assert _all_passed(_service(lyubashenko(2), 2).character_sweep())
    report = _service(parity4, 2).character_sweep()
    assert report.entries
    assert _all_passed(report)

# Orbit projectors, fixed elements and square-free points

def test_orbit_projectors(scaled_solution):
    report = _service(scaled_solution, 2).orbit_projector_symmetry()
    # three orbits on two sites give six multidegrees
    assert len(report.entries) == 6
    assert _all_passed(report)

def test_fixed_element_gl(scaled_solution):
    report = _service(trivial(2), 3).fixed_element_gl()
    kinds = {entry.kind for entry in report.entries}
    assert kinds == {"fixed_gl", "gl_elementary_sum"}
    assert _all_passed(report)

    assert _all_passed(_service(scaled_solution, 2).fixed_element_gl())
    assert _service(lyubashenko(2), 2).fixed_element_gl().entries == []

def test_site_and_elementary_sums():
    e = LegMatrix.elementary(2, 0, 1)
    assert elementary_sum(e, 1, 3) == site_sum(e, 3)
    assert elementary_sum(e, 3, 3).nnz == 1

def test_square_free_symmetry(scaled_solution):
    assert _service(lyubashenko(2), 3).square_free_symmetry().entries == []
    report = _service(trivial(2), 3).square_free_symmetry()
    assert len(report.entries) == 4
    assert _all_passed(report)
    for entry in report.entries:
        assert entry.asserted == [1, 2, 3]
    assert _all_passed(_service(scaled_solution, 3).square_free_symmetry())

# Central elements

def test_central_symmetry(scaled_brace):
    report = central_symmetry(scaled_brace, None, 2, 1, 3, 3)
    assert _all_passed(report)
    assert report.entries[0].per_k == [True] * 4

def test_central_symmetry_preconditions(scaled_brace):
    with pytest.raises(PreconditionError, match="N odd"):
        central_symmetry(scaled_brace, None, 2, 1, 3, 2)
    with pytest.raises(PreconditionError, match=r"a\+a = 0"):
        central_symmetry(scaled_brace, None, 1, 0, 0, 3)
    with pytest.raises(MalformedInputError):
        central_symmetry(scaled_brace, None, 7, 0, 0, 3)
