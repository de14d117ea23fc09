"""
Solution service: construction, validation, orbits, retraction and homomorphisms
of involutive non-degenerate set-theoretic solutions.
"""
import json
import logging
from collections import defaultdict
from itertools import product
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from pydantic import ValidationError

from brace.schemas import BraceIdeal, FiniteBrace, Table
from brace.services import circle_inverse, quotient_brace, validate_brace
from config import settings
from core.exceptions import (
    ClosureError,
    InvalidSolutionError,
    MalformedInputError,
    PreconditionError,
    RetractionError,
)
from core.schemas import CheckResult, Witness
from solution.schemas import (
    HomCheck,
    RetractionChain,
    SetSolution,
    SolutionFile,
    SolutionHom,
    SolutionReport,
)

logger = logging.getLogger(__name__)

ANCHOR_NONDEGENERATE = "σ_x and τ_y are bijections"
ANCHOR_INVOLUTIVE = "ř∘ř = id"
ANCHOR_BRAID = "(ř×Id)(Id×ř)(ř×Id) = (Id×ř)(ř×Id)(Id×ř)"

def _is_permutation(row: Sequence[int], size: int) -> bool:
    return sorted(row) == list(range(size))

def validate_solution(sol: SetSolution) -> SolutionReport:
    """Exhaustive check of non-degeneracy, involutivity and the braid relation."""
    n = sol.size
    elements = range(n)

    # 1. Non-degeneracy
    nondegenerate = CheckResult(check="nondegenerate", anchor=ANCHOR_NONDEGENERATE, passed=True)
    for kind, table in (("sigma", sol.sigma), ("tau", sol.tau)):
        bad = next((x for x in elements if not _is_permutation(table[x], n)), None)
        if bad is not None:
            nondegenerate = CheckResult(
                check="nondegenerate",
                anchor=ANCHOR_NONDEGENERATE,
                passed=False,
                witness=Witness(elements=[bad], note=f"{kind} row {bad} is not a permutation"),
            )
            break

    # 2. Involutivity
    involutive = CheckResult(check="involutive", anchor=ANCHOR_INVOLUTIVE, passed=True)
    for x, y in product(elements, repeat=2):
        if sol.apply(*sol.apply(x, y)) != (x, y):
            involutive = CheckResult(
                check="involutive",
                anchor=ANCHOR_INVOLUTIVE,
                passed=False,
                witness=Witness(elements=[x, y], note=f"ř(ř({x},{y})) = {sol.apply(*sol.apply(x, y))}"),
            )
            break

    # 3. Braid relation on all triples
    braid = CheckResult(check="braid", anchor=ANCHOR_BRAID, passed=True)
    for x, y, z in product(elements, repeat=3):
        a, b = sol.apply(x, y)
        b, c = sol.apply(b, z)
        a, b = sol.apply(a, b)
        left = (a, b, c)
        b, c = sol.apply(y, z)
        a, b = sol.apply(x, b)
        b, c = sol.apply(b, c)
        right = (a, b, c)
        if left != right:
            braid = CheckResult(
                check="braid",
                anchor=ANCHOR_BRAID,
                passed=False,
                witness=Witness(elements=[x, y, z], lhs=str(left), rhs=str(right)),
            )
            break

    return SolutionReport(nondegenerate=nondegenerate, involutive=involutive, braid=braid)

def require_valid(sol: SetSolution) -> SetSolution:
    report = validate_solution(sol)
    if not report.ok:
        failing = next(check for check in report.checks() if not check.passed)
        logger.error(f"Solution {sol.name or '<unnamed>'} fails {failing.check}: {failing.witness}")
        raise InvalidSolutionError(
            f"Solution {sol.name or '<unnamed>'} fails {failing.check} at {failing.witness.elements}"
        )
    return sol

def trivial(n: int) -> SetSolution:
    """ř(x, y) = (y, x)."""
    if n < 1:
        raise MalformedInputError("Solution size must be at least 1")
    identity = tuple(tuple(range(n)) for _ in range(n))
    return SetSolution(name=f"trivial:{n}", size=n, sigma=identity, tau=identity)

def lyubashenko(m: int) -> SetSolution:
    """ř_m(i, j) = (j+1, i−1) mod m."""
    if m < 1:
        raise MalformedInputError("Solution size must be at least 1")
    sigma = tuple(tuple((y + 1) % m for y in range(m)) for _ in range(m))
    tau = tuple(tuple((x - 1) % m for x in range(m)) for _ in range(m))
    return SetSolution(name=f"lyubashenko:{m}", size=m, sigma=sigma, tau=tau)

def from_brace(brace: FiniteBrace, subset: Optional[Iterable[int]] = None, name: str = "") -> SetSolution:
    """σ_x(y) = x∘y − x, τ_y(x) = t∘x − t with t the circle inverse of σ_x(y)."""
    report = validate_brace(brace)
    if not report.ok:
        failing = next(check for check in report.checks() if not check.passed)
        raise PreconditionError(f"Brace fails {failing.check} at {failing.witness.elements}")

    elements = sorted(set(subset)) if subset is not None else list(range(brace.size))
    if not elements or any(not 0 <= x < brace.size for x in elements):
        raise MalformedInputError(f"Subset {elements} is not a nonempty subset of 0..{brace.size - 1}")
    index = {x: i for i, x in enumerate(elements)}
    inverses = [circle_inverse(brace, a) for a in range(brace.size)]

    n = len(elements)
    sigma = [[0] * n for _ in range(n)]
    tau = [[0] * n for _ in range(n)]
    for x, y in product(elements, repeat=2):
        s = brace.sigma(x, y)
        t = inverses[s]
        image = brace.sub(brace.circle[t][x], t)
        if s not in index or image not in index:
            raise ClosureError(f"ř({x}, {y}) = ({s}, {image}) leaves the subset {elements}")
        sigma[index[x]][index[y]] = index[s]
        tau[index[y]][index[x]] = index[image]

    return SetSolution(
        name=name or f"brace[{brace.size}]",
        size=n,
        sigma=tuple(map(tuple, sigma)),
        tau=tuple(map(tuple, tau)),
        labels=tuple(elements),
    )

def orbits(sol: SetSolution) -> List[List[int]]:
    """Finest partition closed under every σ_x and τ_x (union-find)."""
    parent = list(range(sol.size))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for x, y in product(range(sol.size), repeat=2):
        union(y, sol.sigma[x][y])
        union(y, sol.tau[x][y])

    blocks: Dict[int, List[int]] = defaultdict(list)
    for x in range(sol.size):
        blocks[find(x)].append(x)
    return sorted(blocks.values())

def is_indecomposable(sol: SetSolution) -> bool:
    return len(orbits(sol)) == 1

def retract(sol: SetSolution) -> Tuple[SetSolution, SolutionHom]:
    """Quotient by equality of σ-rows, with the induced σ and τ checked well defined."""
    classes: Dict[Tuple[int, ...], int] = {}
    class_of = []
    for x in range(sol.size):
        class_of.append(classes.setdefault(sol.sigma[x], len(classes)))
    k = len(classes)

    sigma: Dict[Tuple[int, int], int] = {}
    tau: Dict[Tuple[int, int], int] = {}
    for x, y in product(range(sol.size), repeat=2):
        cx, cy = class_of[x], class_of[y]
        s, t = sol.apply(x, y)
        if sigma.setdefault((cx, cy), class_of[s]) != class_of[s]:
            raise RetractionError(f"Induced σ ill-defined at ({x}, {y}) of {sol.name or '<unnamed>'}")
        if tau.setdefault((cy, cx), class_of[t]) != class_of[t]:
            raise RetractionError(f"Induced τ ill-defined at ({x}, {y}) of {sol.name or '<unnamed>'}")

    retraction = SetSolution(
        name=f"Ret({sol.name})" if sol.name else "Ret",
        size=k,
        sigma=tuple(tuple(sigma[(a, b)] for b in range(k)) for a in range(k)),
        tau=tuple(tuple(tau[(b, a)] for a in range(k)) for b in range(k)),
    )
    return retraction, SolutionHom(domain=sol, codomain=retraction, mapping=tuple(class_of))

def multipermutation_level(sol: SetSolution) -> Optional[int]:
    """Number of retractions down to one element, or None if the size stabilizes."""
    level, stage = 0, sol
    while stage.size > 1:
        smaller, _ = retract(stage)
        if smaller.size == stage.size:
            return None
        stage, level = smaller, level + 1
    return level

def check_hom(mapping: Sequence[int], domain: SetSolution, codomain: SetSolution) -> HomCheck:
    """Verify the intertwining identity on all pairs and surjectivity."""
    if len(mapping) != domain.size or any(not 0 <= v < codomain.size for v in mapping):
        return HomCheck(witness=Witness(note=f"map {list(mapping)} is not a table {domain.size} -> {codomain.size}"))
    f = mapping
    for x, y in product(range(domain.size), repeat=2):
        s, t = domain.apply(x, y)
        if codomain.apply(f[x], f[y]) != (f[s], f[t]):
            return HomCheck(
                witness=Witness(
                    elements=[x, y],
                    lhs=str(codomain.apply(f[x], f[y])),
                    rhs=str((f[s], f[t])),
                    note="ř'(f(x), f(y)) != (f×f)(ř(x, y))",
                )
            )
    missing = sorted(set(range(codomain.size)) - set(f))
    if missing:
        return HomCheck(witness=Witness(elements=missing, note="not surjective"))
    return HomCheck(hom=SolutionHom(domain=domain, codomain=codomain, mapping=tuple(f)))

def compose_hom(first: SolutionHom, second: SolutionHom) -> SolutionHom:
    """second ∘ first."""
    if first.codomain != second.domain:
        raise PreconditionError("Homomorphisms are not composable")
    mapping = tuple(second.mapping[v] for v in first.mapping)
    return SolutionHom(domain=first.domain, codomain=second.codomain, mapping=mapping)

def _cycle_type(row: Sequence[int]) -> Tuple[int, ...]:
    seen, lengths = set(), []
    for start in range(len(row)):
        if start in seen:
            continue
        length, x = 0, start
        while x not in seen:
            seen.add(x)
            x = row[x]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths))

def _signature(sol: SetSolution, x: int) -> Tuple:
    return (_cycle_type(sol.sigma[x]), _cycle_type(sol.tau[x]), sol.apply(x, x) == (x, x))

def _constraints(sol: SetSolution) -> Dict[int, List[Tuple[int, int, int, int]]]:
    """Intertwining constraints keyed by the largest index they involve."""
    by_trigger: Dict[int, List[Tuple[int, int, int, int]]] = defaultdict(list)
    for x, y in product(range(sol.size), repeat=2):
        s, t = sol.apply(x, y)
        by_trigger[max(x, y, s)].append((0, x, y, s))
        by_trigger[max(x, y, t)].append((1, x, y, t))
    return by_trigger

def _search(domain: SetSolution, codomain: SetSolution, injective: bool) -> Iterable[Tuple[int, ...]]:
    if domain.size > settings.ISO_MAX_SIZE:
        raise PreconditionError(f"Brute-force search is capped at {settings.ISO_MAX_SIZE} elements")
    constraints = _constraints(domain)
    if injective:
        cod_signatures = [_signature(codomain, v) for v in range(codomain.size)]
        candidates = [
            [v for v in range(codomain.size) if cod_signatures[v] == _signature(domain, x)]
            for x in range(domain.size)
        ]
    else:
        candidates = [list(range(codomain.size)) for _ in range(domain.size)]

    f: List[int] = []
    used = set()

    def consistent(x: int) -> bool:
        for kind, a, b, image in constraints.get(x, []):
            fa, fb = f[a], f[b]
            if kind == 0 and codomain.sigma[fa][fb] != f[image]:
                return False
            if kind == 1 and codomain.tau[fb][fa] != f[image]:
                return False
        return True

    def extend(x: int):
        if x == domain.size:
            yield tuple(f)
            return
        for v in candidates[x]:
            if injective and v in used:
                continue
            f.append(v)
            used.add(v)
            if consistent(x):
                yield from extend(x + 1)
            f.pop()
            used.discard(v)

    yield from extend(0)

def find_iso(a: SetSolution, b: SetSolution) -> Optional[SolutionHom]:
    if a.size != b.size:
        return None
    for mapping in _search(a, b, injective=True):
        return SolutionHom(domain=a, codomain=b, mapping=mapping)
    return None

def find_hom(a: SetSolution, b: SetSolution) -> Optional[SolutionHom]:
    """First surjective homomorphism a -> b found by backtracking."""
    if b.size > a.size:
        return None
    for mapping in _search(a, b, injective=False):
        if len(set(mapping)) == b.size:
            return SolutionHom(domain=a, codomain=b, mapping=mapping)
    return None

def automorphisms(sol: SetSolution) -> List[SolutionHom]:
    return [SolutionHom(domain=sol, codomain=sol, mapping=m) for m in _search(sol, sol, injective=True)]

def orbit_quotient(sol: SetSolution) -> SolutionHom:
    """Collapse each orbit to a point of the trivial solution on the orbit set."""
    blocks = orbits(sol)
    mapping = [0] * sol.size
    for i, block in enumerate(blocks):
        for x in block:
            mapping[x] = i
    return SolutionHom(domain=sol, codomain=trivial(len(blocks)), mapping=tuple(mapping))

def quotient_by_ideal(brace: FiniteBrace, subset: Optional[Iterable[int]], ideal: BraceIdeal) -> SolutionHom:
    """x ↦ x + J from (X, ř) onto (X_J, ř_J) inside B/J."""
    domain = from_brace(brace, subset)
    quotient, qmap = quotient_brace(brace, ideal)
    images = sorted({qmap.coset_of[x] for x in domain.labels})
    codomain = from_brace(quotient, images, name=f"{domain.name}/J")
    position = {e: i for i, e in enumerate(images)}
    mapping = tuple(position[qmap.coset_of[x]] for x in domain.labels)
    result = check_hom(mapping, domain, codomain)
    if not result.valid:
        raise PreconditionError(f"Coset map is not a homomorphism: {result.witness}")
    return result.hom

def retract_to_lyubashenko(sol: SetSolution) -> RetractionChain:
    """
    Search a chain of retractions ending in a map onto some ř_m, m > 1.

    Best effort: an empty result means no hit was found, not that none exists.
    """
    require_valid(sol)
    if sol.size >= 2 and sol.size <= settings.ISO_MAX_SIZE and find_iso(sol, lyubashenko(sol.size)):
        return RetractionChain(m=sol.size, chain=[], stage_sizes=[sol.size])

    # 1. Preconditions, reported by name
    if not is_indecomposable(sol):
        raise PreconditionError(f"indecomposable: solution has {len(orbits(sol))} orbits")
    if multipermutation_level(sol) is None:
        raise PreconditionError("finite multipermutation level: retraction stabilizes above one element")
    if len(set(sol.sigma)) == 1:
        raise PreconditionError("σ-condition: σ_x(z) = σ_y(z) for all x, y, z")

    # 2. Retract and test each stage
    chain: List[SolutionHom] = []
    sizes = [sol.size]
    stage = sol
    while stage.size > 1:
        stage, hom = retract(stage)
        chain.append(hom)
        sizes.append(stage.size)
        if stage.size > settings.ISO_MAX_SIZE:
            logger.warning(f"Skipping search at stage of size {stage.size}")
            continue
        for m in range(stage.size, 1, -1):
            hit = find_hom(stage, lyubashenko(m))
            if hit is not None:
                chain.append(hit)
                return RetractionChain(m=m, chain=chain, stage_sizes=sizes)
    logger.warning(f"No map onto a Lyubashenko solution found for {sol.name or '<unnamed>'}")
    return RetractionChain(m=None, chain=chain, stage_sizes=sizes)

def fixed_elements(sol: SetSolution) -> List[int]:
    """x with ř(x, y) = (y, x) for every y."""
    return [x for x in range(sol.size) if all(sol.apply(x, y) == (y, x) for y in range(sol.size))]

def square_free_elements(sol: SetSolution) -> List[int]:
    return [x for x in range(sol.size) if sol.apply(x, x) == (x, x)]

def mutate_sigma(sol: SetSolution, x: int, y: int, value: int) -> SetSolution:
    """Copy with σ_x(y) replaced; the result is not validated."""
    sigma = [list(row) for row in sol.sigma]
    sigma[x][y] = value
    return SetSolution(
        name=f"{sol.name}~σ[{x}][{y}]={value}",
        size=sol.size,
        sigma=tuple(map(tuple, sigma)),
        tau=sol.tau,
    )

def derive_tau(size: int, sigma: Table) -> Table:
    """τ_y(x) = σ^{-1}_{σ_x(y)}(x), the only τ making ř involutive."""
    if len(sigma) != size:
        raise MalformedInputError(f"sigma has {len(sigma)} rows, expected {size}; cannot derive tau")
    inverses = []
    for u in range(size):
        if not _is_permutation(sigma[u], size):
            raise MalformedInputError(f"sigma row {u} is not a permutation; cannot derive tau")
        inverse = [0] * size
        for a, b in enumerate(sigma[u]):
            inverse[b] = a
        inverses.append(inverse)
    return tuple(
        tuple(inverses[sigma[x][y]][x] for x in range(size))
        for y in range(size)
    )

def load_solution(data: dict, source: str = "<data>", validate: bool = True) -> SetSolution:
    try:
        parsed = SolutionFile.model_validate(data)
        tau = parsed.tau
        if tau is None:
            if parsed.derive_tau_from != "involutivity":
                raise MalformedInputError(f"{source}: tau missing and no derive_tau_from given")
            tau = derive_tau(parsed.size, parsed.sigma)
        sol = SetSolution(name=parsed.name or Path(source).stem, size=parsed.size, sigma=parsed.sigma, tau=tau)
    except ValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first["loc"]) or "document"
        raise MalformedInputError(f"{source}: {location}: {first['msg']}")
    return require_valid(sol) if validate else sol

def load_solution_file(path: Union[str, Path], validate: bool = True) -> SetSolution:
    try:
        data = json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise MalformedInputError(f"{path}: file not found")
    except json.JSONDecodeError as e:
        raise MalformedInputError(f"{path}: invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}")
    return load_solution(data, str(path), validate)

def solution_to_json(sol: SetSolution) -> dict:
    return {
        "name": sol.name,
        "size": sol.size,
        "sigma": [list(row) for row in sol.sigma],
        "tau": [list(row) for row in sol.tau],
    }
