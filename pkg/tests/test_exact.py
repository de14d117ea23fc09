from fractions import Fraction

import pytest
from hypothesis import given, settings as hsettings, strategies as st

from core.exceptions import DimensionMismatchError, DuplicateLegError, LegIndexError, MalformedInputError
from exact.grid import at, grid_verify_identity
from exact.legmatrix import (
    LegMatrix,
    from_digits,
    index_table,
    kron,
    permutation_operator,
    tensor_embed,
    tensor_power,
    to_digits,
)
from exact.poly import Poly
from rmatrix.services import build_unchecked, check_matrix
from solution.services import lyubashenko, mutate_sigma, trivial

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)
polys = st.dictionaries(st.integers(0, 3), rationals, max_size=4).map(Poly)

@st.composite
def sparse_matrices(draw, legs=1, dim=2):
    size = dim ** legs
    cells = draw(st.dictionaries(st.tuples(st.integers(0, size - 1), st.integers(0, size - 1)), polys, max_size=6))
    return LegMatrix(legs, dim, cells)

# Poly

def test_poly_drops_zero_coefficients():
    p = Poly({0: 1, 2: 0, 3: Fraction(1, 2)})
    assert list(p.items()) == [(0, Fraction(1)), (3, Fraction(1, 2))]
    assert Poly({1: 0}) == Poly.zero()
    assert not Poly.zero()

def test_poly_arithmetic_and_display():
    lam = Poly.lam()
    p = (lam + 1) * (lam - 1)
    assert p == lam * lam - 1
    assert p.evaluate(3) == 8
    assert str(p) == "λ^2 - 1"
    assert (lam * 0).is_constant()

def test_compose_linear_substitutes():
    lam = Poly.lam()
    p = lam * lam + lam
    assert p.compose_linear(-1, 0) == lam * lam - lam
    assert p.compose_linear(1, 2).evaluate(0) == p.evaluate(2)

def test_negative_degree_rejected():
    with pytest.raises(ValueError):
        Poly({-1: 1})

@given(polys, polys, polys)
def test_poly_ring_laws(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a

@given(polys, polys, rationals)
def test_evaluation_is_a_homomorphism(a, b, point):
    assert (a * b).evaluate(point) == a.evaluate(point) * b.evaluate(point)
    assert (a - b).evaluate(point) == a.evaluate(point) - b.evaluate(point)

# LegMatrix

def test_digits_are_lexicographic():
    assert to_digits(5, 3, 2) == (1, 0, 1)
    assert from_digits((1, 0, 1), 2) == 5

def test_entries_out_of_range_rejected():
    with pytest.raises(MalformedInputError):
        LegMatrix(1, 2, {(2, 0): 1})

def test_permutation_operator():
    assert permutation_operator(1) == LegMatrix.identity(2, 1)
    perm = permutation_operator(2)
    assert index_table(perm) == [0, 2, 1, 3]

def test_embed_permutation_on_both_orders():
    perm = permutation_operator(2)
    assert tensor_embed(perm, (0, 1), 2) == perm
    assert tensor_embed(perm, (1, 0), 2) == perm

def test_embed_on_reversed_far_legs():
    sol = lyubashenko(2)
    op = tensor_embed(check_matrix(sol), (2, 0), 3)
    # basis (x0, x1, x2) = (0, 1, 0): the pair (leg2, leg0) = (0, 0) maps to ř(0, 0) = (1, 1)
    image = op.column(from_digits((0, 1, 0), 2))
    assert image == {from_digits((1, 1, 1), 2): Poly.one()}

def test_embed_errors():
    perm = permutation_operator(2)
    with pytest.raises(DuplicateLegError):
        tensor_embed(perm, (1, 1), 3)
    with pytest.raises(LegIndexError):
        tensor_embed(perm, (0, 3), 3)
    with pytest.raises(DimensionMismatchError):
        tensor_embed(perm, (0,), 3)

def test_partial_trace_of_identity():
    traced = LegMatrix.identity(2, 3).partial_trace(0)
    assert traced == LegMatrix.identity(1, 3).scale(3)

def test_coefficient_extraction():
    bundle = build_unchecked(trivial(2))
    assert bundle.check_spec.coefficient(1) == bundle.check_const
    assert bundle.r_spec.coefficient(0) == bundle.perm
    assert bundle.check_spec.coefficient(5).is_zero()

def test_mismatched_shapes_raise():
    with pytest.raises(DimensionMismatchError):
        LegMatrix.identity(1, 2) @ LegMatrix.identity(1, 3)

def test_kron_and_tensor_power():
    e = LegMatrix.elementary(2, 0, 1)
    assert kron(e, e) == LegMatrix(2, 2, {(0, 3): 1})
    assert tensor_power(e, 0) == LegMatrix.identity(0, 2)
    assert tensor_power(e, 3).nnz == 1

def test_first_difference_is_row_major():
    a = LegMatrix(1, 2, {(0, 1): 1, (1, 0): 2})
    b = LegMatrix(1, 2, {(0, 1): 3, (1, 0): 5})
    row, col, lhs, rhs = a.first_difference(b)
    assert (row, col, lhs, rhs) == (0, 1, Poly.constant(1), Poly.constant(3))
    assert a.first_difference(a) is None

@given(sparse_matrices(), sparse_matrices(), sparse_matrices())
@hsettings(max_examples=40)
def test_matrix_product_associates(a, b, c):
    assert (a @ b) @ c == a @ (b @ c)

@given(sparse_matrices(legs=2))
@hsettings(max_examples=40)
def test_partial_transposes_compose_to_transpose(a):
    assert a.partial_transpose(0).partial_transpose(1) == a.transpose()

@given(sparse_matrices(legs=2), sparse_matrices())
@hsettings(max_examples=30, deadline=None)
def test_operators_on_disjoint_legs_commute(a, b):
    for pair, single in [((0, 1), 2), ((2, 0), 1), ((1, 3), 0)]:
        legs = 4 if 3 in pair else 3
        left = tensor_embed(a, pair, legs)
        right = tensor_embed(b, (single,), legs)
        assert left @ right == right @ left, (pair, single)

@given(sparse_matrices(legs=3))
@hsettings(max_examples=30, deadline=None)
def test_partial_trace_ignores_basis_order_on_other_legs(a):
    # relabel the basis of leg 0, then swap legs 0 and 1
    flip = LegMatrix.from_index_map(1, 2, {0: 1, 1: 0})
    relabel = tensor_embed(flip, (0,), 3)
    assert (relabel @ a @ relabel).partial_trace(2) == tensor_embed(flip, (0,), 2) @ a.partial_trace(2) @ tensor_embed(flip, (0,), 2)

    swap = tensor_embed(permutation_operator(2), (0, 1), 3)
    swap_traced = permutation_operator(2)
    assert (swap @ a @ swap).partial_trace(2) == swap_traced @ a.partial_trace(2) @ swap_traced

    # legs 0, 1, 2 of a placed on 1, 2, 0: the traced leg moves to position 0
    rotated = tensor_embed(a, (1, 2, 0), 3)
    assert rotated.partial_trace(0) == a.partial_trace(2)

# Grid identities

def test_ybe_on_grid_for_trivial_solution():
    bundle = build_unchecked(trivial(2))
    r12 = tensor_embed(bundle.r_spec, (0, 1), 3)
    r13 = tensor_embed(bundle.r_spec, (0, 2), 3)
    r23 = tensor_embed(bundle.r_spec, (1, 2), 3)
    verdict = grid_verify_identity(
        [at(r12, 1, -1), at(r13, 1, 0), at(r23, 0, 1)],
        [at(r23, 0, 1), at(r13, 1, 0), at(r12, 1, -1)],
        3,
    )
    assert verdict.equal
    assert verdict.points_checked == 16

def test_corrupted_matrix_fails_with_point():
    good = lyubashenko(3)
    bad = build_unchecked(mutate_sigma(good, 0, 0, 2))
    c12 = tensor_embed(bad.check_spec, (0, 1), 3)
    c23 = tensor_embed(bad.check_spec, (1, 2), 3)
    verdict = grid_verify_identity(
        [at(c12, 1, -1), at(c23, 1, 0), at(c12, 0, 1)],
        [at(c23, 0, 1), at(c12, 1, 0), at(c23, 1, -1)],
        3,
    )
    assert not verdict.equal
    assert len(verdict.witness.point) == 2
