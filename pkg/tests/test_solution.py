import json

import pytest

from brace.schemas import BraceIdeal
from brace.services import trivial_brace
from core.exceptions import ClosureError, InvalidSolutionError, MalformedInputError, PreconditionError
from solution.schemas import SetSolution
from solution.services import (
    automorphisms,
    check_hom,
    compose_hom,
    find_hom,
    find_iso,
    fixed_elements,
    from_brace,
    is_indecomposable,
    load_solution,
    load_solution_file,
    lyubashenko,
    multipermutation_level,
    mutate_sigma,
    orbit_quotient,
    orbits,
    quotient_by_ideal,
    require_valid,
    retract,
    retract_to_lyubashenko,
    solution_to_json,
    square_free_elements,
    trivial,
    validate_solution,
)

@pytest.mark.parametrize("n", [2, 3, 4])
def test_trivial_solutions_validate(n):
    assert validate_solution(trivial(n)).ok

def test_lyubashenko_validates():
    sol = lyubashenko(3)
    assert validate_solution(sol).ok
    assert sol.apply(0, 2) == (0, 2)
    assert sol.apply(1, 1) == (2, 0)

def test_non_permutation_row_fails_nondegenerate():
    broken = mutate_sigma(lyubashenko(3), 1, 0, 2)
    report = validate_solution(broken)
    assert not report.nondegenerate.passed
    assert report.nondegenerate.witness.elements == [1]
    with pytest.raises(InvalidSolutionError):
        require_valid(broken)

def test_trivial_brace_gives_trivial_solution():
    sol = from_brace(trivial_brace(3))
    assert sol.sigma == trivial(3).sigma
    assert sol.tau == trivial(3).tau

def test_scaled_brace_solution(scaled_solution):
    # σ_0 = σ_2 = id, σ_1 = σ_3 = multiply by 3
    assert scaled_solution.sigma[0] == (0, 1, 2, 3)
    assert scaled_solution.sigma[2] == (0, 1, 2, 3)
    assert scaled_solution.sigma[1] == (0, 3, 2, 1)
    assert scaled_solution.sigma[3] == (0, 3, 2, 1)
    assert validate_solution(scaled_solution).ok

def test_brace_subset_must_be_closed(scaled_brace):
    with pytest.raises(ClosureError):
        from_brace(scaled_brace, [1])
    sol = from_brace(scaled_brace, [0, 2])
    assert sol.labels == (0, 2)

def test_orbits():
    assert orbits(lyubashenko(4)) == [[0, 1, 2, 3]]
    assert orbits(trivial(3)) == [[0], [1], [2]]
    assert is_indecomposable(lyubashenko(2))

def test_scaled_orbits_are_closed(scaled_solution):
    blocks = orbits(scaled_solution)
    assert [0] in blocks and [2] in blocks and [1, 3] in blocks

def test_retractions(scaled_solution):
    retraction, hom = retract(lyubashenko(3))
    assert retraction.size == 1
    assert retract(trivial(3))[0].size == 1

    retraction, hom = retract(scaled_solution)
    assert retraction.size == 2
    assert hom.mapping[0] == hom.mapping[2]
    assert hom.mapping[1] == hom.mapping[3]
    assert retraction.sigma == trivial(2).sigma

def test_multipermutation_levels(scaled_solution, parity4):
    assert multipermutation_level(trivial(1)) == 0
    assert multipermutation_level(lyubashenko(3)) == 1
    assert multipermutation_level(scaled_solution) == 2
    assert multipermutation_level(parity4) == 2

def test_homomorphisms(lyub3):
    assert check_hom([0, 1, 2], lyub3, lyub3).valid
    quotient = orbit_quotient(lyub3)
    assert quotient.codomain.size == 1
    assert check_hom(quotient.mapping, lyub3, quotient.codomain).valid

def test_hom_reports_witness(lyub2, trivial2):
    result = check_hom([0, 1], lyub2, trivial2)
    assert not result.valid
    assert result.witness.elements is not None

def test_find_iso():
    assert find_iso(lyubashenko(2), trivial(2)) is None
    found = find_iso(lyubashenko(3), lyubashenko(3))
    assert found is not None

def test_find_hom_and_composition(parity4):
    retraction, first = retract(parity4)
    second = find_hom(retraction, lyubashenko(2))
    assert second is not None
    composed = compose_hom(first, second)
    assert check_hom(composed.mapping, parity4, lyubashenko(2)).valid

def test_automorphisms_of_trivial_are_all_permutations():
    assert len(automorphisms(trivial(3))) == 6

def test_ideal_quotient_hom(scaled_brace):
    hom = quotient_by_ideal(scaled_brace, None, BraceIdeal(elements=(0, 2)))
    assert hom.codomain.size == 2
    hom = quotient_by_ideal(scaled_brace, None, BraceIdeal(elements=(0,)))
    assert hom.codomain.size == 4
    hom = quotient_by_ideal(scaled_brace, None, BraceIdeal(elements=(0, 1, 2, 3)))
    assert hom.codomain.size == 1

def test_retract_to_lyubashenko(parity4, scaled_solution):
    found = retract_to_lyubashenko(lyubashenko(3))
    assert found.m == 3 and found.chain == []

    found = retract_to_lyubashenko(parity4)
    assert found.m == 2
    assert found.stage_sizes == [4, 2]

    with pytest.raises(PreconditionError, match="indecomposable"):
        retract_to_lyubashenko(scaled_solution)
    with pytest.raises(PreconditionError):
        retract_to_lyubashenko(trivial(3))

def test_fixed_and_square_free(lyub2, scaled_solution):
    assert fixed_elements(trivial(3)) == [0, 1, 2]
    assert fixed_elements(lyub2) == []
    assert square_free_elements(lyub2) == []
    assert fixed_elements(scaled_solution) == [0, 2]

def test_tau_derived_from_involutivity(parity4):
    assert validate_solution(parity4).ok
    assert parity4.name == "parity4"
    again = load_solution(solution_to_json(parity4))
    assert again.tau == parity4.tau

def test_malformed_files(fixtures_dir, tmp_path):
    with pytest.raises(MalformedInputError, match="sigma"):
        load_solution_file(fixtures_dir / "bad_shape.json")
    path = tmp_path / "broken.json"
    path.write_text("{")
    with pytest.raises(MalformedInputError, match="line 1"):
        load_solution_file(path)
    path.write_text(json.dumps({"size": 2, "sigma": [[0, 1], [0, 1]]}))
    with pytest.raises(MalformedInputError, match="tau"):
        load_solution_file(path)

def test_set_solution_rejects_out_of_range_tables():
    with pytest.raises(ValueError):
        SetSolution(size=2, sigma=((0, 2), (0, 1)), tau=((0, 1), (0, 1)))

@pytest.mark.parametrize(
    "sigma",
    [[[0, 1, 2]], [[0, 1, 2], [1, 2, 0], [2, 0, 1], [0, 1, 2]], [[0, 1], [1, 0], [0, 1]]],
    ids=["too_few_rows", "too_many_rows", "short_rows"],
)
def test_derived_tau_needs_a_square_table(sigma):
    with pytest.raises(MalformedInputError, match="sigma"):
        load_solution({"size": 3, "sigma": sigma, "derive_tau_from": "involutivity"})
