"""
Shared fixtures: small corpus solutions, their braces and fixture files.
"""
from pathlib import Path

import pytest

from brace.services import ring_to_brace, scaled_mod_ring, truncated_polynomial_ring
from solution.services import from_brace, load_solution_file, lyubashenko, trivial

FIXTURES = Path(__file__).parent / "fixtures"

@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES

@pytest.fixture
def scaled_brace():
    """Brace of Z/4 with a·b = 2ab, so a∘b = 2ab+a+b."""
    return ring_to_brace(scaled_mod_ring(4, 2))

@pytest.fixture
def truncated_brace():
    return ring_to_brace(truncated_polynomial_ring(2, 3))

@pytest.fixture
def scaled_solution(scaled_brace):
    return from_brace(scaled_brace, name="scaled:4,2")

@pytest.fixture
def parity4():
    """σ_x(y) = y+1 for even x, y+3 for odd x (mod 4); τ derived from involutivity."""
    return load_solution_file(FIXTURES / "parity4.json")

@pytest.fixture
def trivial2():
    return trivial(2)

@pytest.fixture
def lyub2():
    return lyubashenko(2)

@pytest.fixture
def lyub3():
    return lyubashenko(3)
