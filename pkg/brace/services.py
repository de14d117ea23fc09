"""
Brace service: finite rings, nilpotent-ring braces, ideals and quotients.

All axioms are verified exhaustively on the stored tables.
"""
import json
import logging
from itertools import product
from pathlib import Path
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Tuple, Union

from pydantic import ValidationError

from brace.schemas import (
    BraceIdeal,
    BraceReport,
    FiniteBrace,
    FiniteRing,
    IdealReport,
    QuotientMap,
    RingReport,
    Table,
)
from core.exceptions import IdealError, MalformedInputError, NotNilpotentError, PreconditionError
from core.schemas import CheckResult, Witness

logger = logging.getLogger(__name__)

ANCHOR_ABELIAN = "(B, +) abelian group with identity 0"
ANCHOR_ASSOC_MUL = "(a·b)·c = a·(b·c)"
ANCHOR_DISTRIBUTIVE = "a·(b+c) = a·b+a·c, (a+b)·c = a·c+b·c"
ANCHOR_CIRCLE = "(B, ∘) group with identity 0"
ANCHOR_COMPAT = "a∘(b+c)+a = a∘b+a∘c"

def _fail(check: str, anchor: str, elements: Sequence[int], note: str) -> CheckResult:
    return CheckResult(check=check, anchor=anchor, passed=False, witness=Witness(elements=list(elements), note=note))

def _group_check(table: Table, size: int, check: str, anchor: str, abelian: bool) -> CheckResult:
    elements = range(size)
    for a in elements:
        if table[0][a] != a or table[a][0] != a:
            return _fail(check, anchor, [a], "0 is not a two-sided identity")
    if abelian:
        for a, b in product(elements, repeat=2):
            if table[a][b] != table[b][a]:
                return _fail(check, anchor, [a, b], "not commutative")
    for a, b, c in product(elements, repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            return _fail(check, anchor, [a, b, c], "not associative")
    for a in elements:
        if not any(table[a][b] == 0 and table[b][a] == 0 for b in elements):
            return _fail(check, anchor, [a], "no inverse")
    return CheckResult(check=check, anchor=anchor, passed=True)

def nilpotency_index(ring: FiniteRing) -> Optional[int]:
    """Least k with every k-fold product zero, searched up to the ring size."""
    products = set(range(ring.size))
    for k in range(1, ring.size + 1):
        if products == {0}:
            return k
        products = {ring.mul[s][x] for s in products for x in range(ring.size)}
    return None

def validate_ring(ring: FiniteRing) -> RingReport:
    """Check the ring axioms on all pairs and triples."""
    size = ring.size
    # 1. Additive group
    abelian_add = _group_check(ring.add, size, "abelian_add", ANCHOR_ABELIAN, abelian=True)

    # 2. Associativity of the product
    associative_mul = CheckResult(check="associative_mul", anchor=ANCHOR_ASSOC_MUL, passed=True)
    for a, b, c in product(range(size), repeat=3):
        if ring.mul[ring.mul[a][b]][c] != ring.mul[a][ring.mul[b][c]]:
            associative_mul = _fail("associative_mul", ANCHOR_ASSOC_MUL, [a, b, c], "(a·b)·c != a·(b·c)")
            break

    # 3. Two-sided distributivity
    distributive = CheckResult(check="distributive", anchor=ANCHOR_DISTRIBUTIVE, passed=True)
    for a, b, c in product(range(size), repeat=3):
        left = ring.mul[a][ring.add[b][c]] == ring.add[ring.mul[a][b]][ring.mul[a][c]]
        right = ring.mul[ring.add[a][b]][c] == ring.add[ring.mul[a][c]][ring.mul[b][c]]
        if not (left and right):
            distributive = _fail("distributive", ANCHOR_DISTRIBUTIVE, [a, b, c], "left" if not left else "right")
            break

    # 4. Nilpotency
    index = nilpotency_index(ring) if associative_mul.passed else None
    return RingReport(
        abelian_add=abelian_add,
        associative_mul=associative_mul,
        distributive=distributive,
        nilpotency_index=index,
    )

def validate_brace(brace: FiniteBrace) -> BraceReport:
    size = brace.size
    abelian_add = _group_check(brace.add, size, "abelian_add", ANCHOR_ABELIAN, abelian=True)
    circle_group = _group_check(brace.circle, size, "circle_group", ANCHOR_CIRCLE, abelian=False)
    compatibility = CheckResult(check="compatibility", anchor=ANCHOR_COMPAT, passed=True)
    add, circle = brace.add, brace.circle
    for a, b, c in product(range(size), repeat=3):
        if add[circle[a][add[b][c]]][a] != add[circle[a][b]][circle[a][c]]:
            compatibility = _fail("compatibility", ANCHOR_COMPAT, [a, b, c], "a∘(b+c)+a != a∘b+a∘c")
            break
    return BraceReport(abelian_add=abelian_add, circle_group=circle_group, compatibility=compatibility)

def ring_to_brace(ring: FiniteRing) -> FiniteBrace:
    """a∘b = a·b + a + b on a nilpotent ring."""
    report = validate_ring(ring)
    if not report.ok:
        failing = next(check for check in report.checks() if not check.passed)
        logger.error(f"Ring axiom {failing.check} fails: {failing.witness}")
        raise MalformedInputError(f"Ring axiom {failing.check} fails at {failing.witness.elements}")
    if report.nilpotency_index is None:
        raise NotNilpotentError(f"Ring of size {ring.size} has no nilpotency index <= {ring.size}")
    add, mul = ring.add, ring.mul
    circle = tuple(tuple(add[mul[a][b]][add[a][b]] for b in range(ring.size)) for a in range(ring.size))
    return FiniteBrace(size=ring.size, add=ring.add, circle=circle)

def brace_to_ring(brace: FiniteBrace) -> FiniteRing:
    """a·b = a∘b − a − b."""
    mul = tuple(
        tuple(brace.sub(brace.sub(brace.circle[a][b], a), b) for b in range(brace.size))
        for a in range(brace.size)
    )
    return FiniteRing(size=brace.size, add=brace.add, mul=mul)

def circle_inverse(brace: FiniteBrace, a: int) -> int:
    for t in range(brace.size):
        if brace.circle[a][t] == 0 and brace.circle[t][a] == 0:
            return t
    raise PreconditionError(f"Element {a} has no inverse in (B, ∘)")

def scaled_mod_ring(m: int, c: int) -> FiniteRing:
    """Z/m with a·b := c·a·b mod m."""
    if m < 1:
        raise MalformedInputError("Modulus must be at least 1")
    add = tuple(tuple((a + b) % m for b in range(m)) for a in range(m))
    mul = tuple(tuple((c * a * b) % m for b in range(m)) for a in range(m))
    return FiniteRing(size=m, add=add, mul=mul)

def zero_ring(n: int) -> FiniteRing:
    return scaled_mod_ring(n, 0)

def modular_ring(m: int) -> FiniteRing:
    """Z/m with ordinary multiplication (not nilpotent for m > 1)."""
    return scaled_mod_ring(m, 1)

def truncated_polynomial_ring(p: int, d: int) -> FiniteRing:
    """
    t·Z_p[t]/(t^d): polynomials c_1 t + … + c_{d-1} t^{d-1}.

    Element index is Σ c_i p^(i-1), so c_1 is the least significant digit.
    """
    if p < 2 or d < 1:
        raise MalformedInputError("Need a modulus p >= 2 and truncation degree d >= 1")
    width = d - 1
    size = p ** width

    def coeffs(index: int) -> List[int]:
        digits = []
        for _ in range(width):
            index, digit = divmod(index, p)
            digits.append(digit)
        return digits

    def encode(digits: Sequence[int]) -> int:
        return sum((digit % p) * p ** i for i, digit in enumerate(digits))

    vectors = [coeffs(i) for i in range(size)]
    add = tuple(
        tuple(encode([x + y for x, y in zip(vectors[a], vectors[b])]) for b in range(size))
        for a in range(size)
    )

    def multiply(a: List[int], b: List[int]) -> int:
        result = [0] * width
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                # (i+1) + (j+1) is the degree of the product term
                degree = i + j + 2
                if degree < d:
                    result[degree - 1] += x * y
        return encode(result)

    mul = tuple(tuple(multiply(vectors[a], vectors[b]) for b in range(size)) for a in range(size))
    return FiniteRing(size=size, add=add, mul=mul)

def trivial_brace(n: int) -> FiniteBrace:
    """Z/n with a∘b = a+b."""
    table = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
    return FiniteBrace(size=n, add=table, circle=table)

def central_involutive_elements(brace: FiniteBrace) -> List[int]:
    """Elements a central in (B, ∘) with a+a = 0 and a∘a = 0."""
    found = []
    for a in range(brace.size):
        central = all(brace.circle[a][b] == brace.circle[b][a] for b in range(brace.size))
        if central and brace.add[a][a] == 0 and brace.circle[a][a] == 0:
            found.append(a)
    return found

def _closure_check(check: str, anchor: str, members: FrozenSet[int], candidates, image: Callable) -> CheckResult:
    for args in candidates:
        value = image(*args)
        if value not in members:
            return _fail(check, anchor, list(args) + [value], "image leaves the subset")
    return CheckResult(check=check, anchor=anchor, passed=True)

def validate_ideal(brace: FiniteBrace, ideal: BraceIdeal) -> IdealReport:
    """(J,+) subgroup, (J,∘) normal subgroup, σ_a(J) ⊆ J for all a."""
    members = frozenset(ideal.elements)
    elements = range(brace.size)
    add, circle = brace.add, brace.circle

    if any(j not in elements for j in members):
        raise MalformedInputError(f"Ideal elements {sorted(members)} are not all in 0..{brace.size - 1}")

    # 1. Additive subgroup
    anchor = "(J, +) is a subgroup of (B, +)"
    if 0 not in members:
        additive = _fail("additive_subgroup", anchor, sorted(members), "must contain 0")
    else:
        additive = _closure_check(
            "additive_subgroup", anchor, members, product(members, repeat=2), lambda a, b: add[a][b]
        )

    # 2. Normal subgroup of the circle group
    anchor = "(J, ∘) is a normal subgroup of (B, ∘)"
    normal = _closure_check("normal_circle_subgroup", anchor, members, product(members, repeat=2), lambda a, b: circle[a][b])
    if normal.passed and additive.passed:
        normal = _closure_check(
            "normal_circle_subgroup",
            anchor,
            members,
            product(elements, members),
            lambda a, j: circle[circle[a][j]][circle_inverse(brace, a)],
        )

    # 3. Invariance under σ_a(b) = a∘b − a
    anchor = "σ_a(J) ⊆ J with σ_a(b) = a∘b − a"
    sigma = _closure_check("sigma_invariant", anchor, members, product(elements, members), brace.sigma)

    return IdealReport(additive_subgroup=additive, normal_circle_subgroup=normal, sigma_invariant=sigma)

def quotient_brace(brace: FiniteBrace, ideal: BraceIdeal) -> Tuple[FiniteBrace, QuotientMap]:
    """B/J on additive cosets; both operations re-checked for well-definedness."""
    report = validate_ideal(brace, ideal)
    if not report.ok:
        failing = next(check for check in report.checks() if not check.passed)
        logger.error(f"Ideal axiom {failing.check} fails for {ideal.elements}")
        raise IdealError(f"{failing.check} fails (witness {failing.witness.elements})")

    # 1. Cosets a + J, indexed by their least element
    cosets: Dict[FrozenSet[int], int] = {}
    for a in range(brace.size):
        coset = frozenset(brace.add[a][j] for j in ideal.elements)
        cosets.setdefault(coset, min(coset))
    representatives = tuple(sorted(cosets.values()))
    index_of_rep = {rep: i for i, rep in enumerate(representatives)}
    coset_of = [0] * brace.size
    for coset, rep in cosets.items():
        for a in coset:
            coset_of[a] = index_of_rep[rep]

    # 2. Induced tables, checked on every pair of representatives
    size = len(representatives)

    def induced(table: Table, name: str) -> Table:
        result: Dict[Tuple[int, int], int] = {}
        for a, b in product(range(brace.size), repeat=2):
            key = (coset_of[a], coset_of[b])
            value = coset_of[table[a][b]]
            if result.setdefault(key, value) != value:
                raise IdealError(f"Coset {name} is ill-defined at elements ({a}, {b})")
        return tuple(tuple(result[(i, j)] for j in range(size)) for i in range(size))

    quotient = FiniteBrace(size=size, add=induced(brace.add, "addition"), circle=induced(brace.circle, "circle"))
    logger.info(f"Quotient of size {brace.size} brace by ideal of size {len(ideal.elements)} has size {size}")
    return quotient, QuotientMap(coset_of=tuple(coset_of), representatives=representatives)

def _load_json(path: Union[str, Path]) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise MalformedInputError(f"{path}: file not found")
    except json.JSONDecodeError as e:
        raise MalformedInputError(f"{path}: invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}")

def _describe(error: ValidationError) -> str:
    first = error.errors()[0]
    location = ".".join(str(part) for part in first["loc"]) or "document"
    return f"{location}: {first['msg']}"

def load_ring_file(path: Union[str, Path]) -> FiniteRing:
    data = _load_json(path)
    try:
        return FiniteRing.model_validate(data)
    except ValidationError as e:
        raise MalformedInputError(f"{path}: {_describe(e)}")

def load_brace_file(path: Union[str, Path]) -> FiniteBrace:
    """Brace file with a circle table, or a ring file converted through a∘b = a·b+a+b."""
    data = _load_json(path)
    try:
        if isinstance(data, dict) and "mul" in data and "circle" not in data:
            return ring_to_brace(FiniteRing.model_validate(data))
        return FiniteBrace.model_validate(data)
    except ValidationError as e:
        raise MalformedInputError(f"{path}: {_describe(e)}")
