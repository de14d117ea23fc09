"""
Symmetry service: constructive symmetries of periodic transfer matrices and their
exact verification against every charge t^(k).
"""
import logging
import math
from collections import defaultdict
from fractions import Fraction
from itertools import combinations, product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sympy import Matrix, prime
from sympy.polys.domains import GF, ZZ
from sympy.polys.matrices import DM
from sympy.polys.matrices.normalforms import invariant_factors

from brace.schemas import FiniteBrace
from chain.schemas import ChainSystem
from chain.services import build_chain, site_check
from core.exceptions import (
    CocycleError,
    DimensionMismatchError,
    MalformedInputError,
    NotAutomorphismError,
    PreconditionError,
)
from core.schemas import CheckResult, Witness
from exact.checks import commutes_check
from exact.legmatrix import (
    LegMatrix,
    kron,
    sum_of,
    tensor_embed,
    tensor_power,
    to_digits,
)
from solution.schemas import SetSolution
from solution.services import (
    automorphisms,
    check_hom,
    fixed_elements,
    from_brace,
    orbits,
    require_valid,
    square_free_elements,
)
from symmetry.schemas import (
    CocycleSolution,
    DiagonalSymmetry,
    LiftReport,
    SymmetryEntry,
    SymmetryReport,
)

logger = logging.getLogger(__name__)

# Sign characters are listed exhaustively up to this many independent ones
SIGN_BASIS_LIMIT = 4

def charge_entry(
    chain: ChainSystem,
    op: LegMatrix,
    generator: str,
    kind: str,
    anchor: str,
    asserted: Optional[Iterable[int]] = None,
) -> SymmetryEntry:
    """[op, t^(k)] for every k in 0..N; the witness comes from the first asserted failure."""
    asserted = list(range(chain.sites + 1)) if asserted is None else list(asserted)
    per_k: List[bool] = []
    witness = None
    for k in range(chain.sites + 1):
        charge = chain.t(k)
        difference = (op @ charge).first_difference(charge @ op)
        per_k.append(difference is None)
        if difference is not None and witness is None and k in asserted:
            row, col, lhs, rhs = difference
            witness = Witness(row=row, col=col, lhs=str(lhs), rhs=str(rhs), note=f"k={k}")
    return SymmetryEntry(
        generator=generator,
        kind=kind,
        anchor=anchor,
        per_k=per_k,
        asserted=asserted,
        witness=witness,
    )

def site_sum(op: LegMatrix, sites: int) -> LegMatrix:
    """Δ^(N)(Y) = Σ_n Y_n for a one-leg Y."""
    return sum_of([tensor_embed(op, (n,), sites) for n in range(sites)], sites, op.leg_dim)

def elementary_sum(op: LegMatrix, count: int, sites: int) -> LegMatrix:
    """Σ_{m1<…<m_count} Y_{m1} … Y_{m_count}."""
    block = tensor_power(op, count)
    terms = [tensor_embed(block, legs, sites) for legs in combinations(range(sites), count)]
    return sum_of(terms, sites, op.leg_dim)

def diagonal_operator(sym: DiagonalSymmetry, leg_dim: int) -> LegMatrix:
    """M = Σ α_x e_{x,f(x)}."""
    return LegMatrix(1, leg_dim, {(x, fx): a for x, (fx, a) in enumerate(zip(sym.f, sym.alpha))})

def require_automorphism(sol: SetSolution, f: Sequence[int]) -> None:
    result = check_hom(f, sol, sol)
    if not result.valid or len(set(f)) != sol.size:
        logger.error(f"{list(f)} is not an automorphism of {sol.name or '<unnamed>'}")
        raise NotAutomorphismError(f"{list(f)} is not an automorphism: {result.witness}")

def cocycle_violation(sol: SetSolution, alpha: Sequence[Fraction]) -> Optional[Tuple[int, int]]:
    for x, y in product(range(sol.size), repeat=2):
        s, t = sol.apply(x, y)
        if alpha[x] * alpha[y] != alpha[s] * alpha[t]:
            return x, y
    return None

def relation_rows(sol: SetSolution) -> List[Tuple[int, ...]]:
    """Exponent relations e_x + e_y − e_{σ_x(y)} − e_{τ_y(x)}, deduplicated."""
    rows = set()
    for x, y in product(range(sol.size), repeat=2):
        s, t = sol.apply(x, y)
        row = [0] * sol.size
        row[x] += 1
        row[y] += 1
        row[s] -= 1
        row[t] -= 1
        rows.add(tuple(row))
    return sorted(rows)

def _integer_vector(vector: Matrix) -> List[int]:
    scale = math.lcm(*(int(v.q) for v in vector))
    values = [int(v * scale) for v in vector]
    divisor = math.gcd(*values) or 1
    sign = -1 if next(v for v in values if v) < 0 else 1
    return [sign * v // divisor for v in values]

def _unit_basis(size: int) -> List[List[int]]:
    return [[int(i == j) for i in range(size)] for j in range(size)]

def cocycle_lattice(sol: SetSolution) -> Tuple[int, List[int], List[List[int]], List[List[int]]]:
    """Rank, torsion, integer kernel basis and mod-2 kernel basis of the relation lattice."""
    size = sol.size
    rows = [list(row) for row in relation_rows(sol) if any(row)]
    if not rows:
        return 0, [], _unit_basis(size), _unit_basis(size)

    # 1. Smith invariants of the relation matrix
    factors = [abs(int(v)) for v in invariant_factors(DM(rows, ZZ)) if v != 0]
    rank = Matrix(rows).rank()
    torsion = [v for v in factors if v > 1]

    # 2. Integer kernel: admissible exponent vectors
    kernel = [_integer_vector(vector) for vector in Matrix(rows).nullspace()]

    # 3. Kernel mod 2: admissible ±1 characters
    parity = sorted({tuple(v % 2 for v in row) for row in rows if any(v % 2 for v in row)})
    if parity:
        null = DM([list(row) for row in parity], GF(2)).nullspace().to_list()
        signs = [[int(v) % 2 for v in vector] for vector in null]
    else:
        signs = _unit_basis(size)
    return rank, torsion, kernel, signs

def solve_cocycle(sol: SetSolution, f: Sequence[int]) -> CocycleSolution:
    """Weights α with α_x α_y = α_{σ_x(y)} α_{τ_y(x)}, as lattice data and instances."""
    require_valid(sol)
    require_automorphism(sol, f)
    f = tuple(f)
    rank, torsion, kernel, signs = cocycle_lattice(sol)

    # Distinct primes on free generators: α_x = Π_j p_j^(v_j,x)
    primes = [int(prime(j + 1)) for j in range(len(kernel))]
    instantiations = [
        DiagonalSymmetry(f=f, alpha=[Fraction(p) ** e for e in vector])
        for p, vector in zip(primes, kernel)
    ]
    if len(kernel) > 1:
        combined = [math.prod((Fraction(p) ** vector[x] for p, vector in zip(primes, kernel)), start=Fraction(1)) for x in range(sol.size)]
        instantiations.append(DiagonalSymmetry(f=f, alpha=combined))

    if len(signs) <= SIGN_BASIS_LIMIT:
        choices = [
            [sum(vector[x] for vector in subset) % 2 for x in range(sol.size)]
            for count in range(1, len(signs) + 1)
            for subset in combinations(signs, count)
        ]
    else:
        logger.warning(f"{len(signs)} independent sign characters; listing the basis only")
        choices = signs
    characters = [DiagonalSymmetry(f=f, alpha=[(-1) ** b for b in bits]) for bits in choices if any(bits)]

    if torsion and any(v > 2 for v in torsion):
        logger.warning(f"Torsion {torsion} has characters that need roots of unity; not instantiated")
    return CocycleSolution(
        automorphism=f,
        relation_rank=rank,
        free_rank=sol.size - rank,
        torsion=torsion,
        kernel_basis=kernel,
        instantiations=instantiations,
        sign_characters=characters,
    )

class SymmetryService:
    """Symmetry checks against one built chain."""

    def __init__(self, chain: ChainSystem):
        self.chain = chain
        self.sol = chain.sol
        self.d = chain.leg_dim
        self.N = chain.sites

    def _report(self, kind: str, preconditions: List[CheckResult], entries: List[SymmetryEntry]) -> SymmetryReport:
        failed = sum(not entry.passed for entry in entries)
        logger.info(f"{kind}: {len(entries)} generators on {self.N} sites, {failed} failed")
        return SymmetryReport(sites=self.N, kind=kind, preconditions=preconditions, entries=entries)

    def lift_check(self, B: LegMatrix) -> LiftReport:
        """(B⊗B)R = R(B⊗B), then the monodromy identity and [B^⊗N, t^(k)]."""
        if B.leg_count != 1 or B.leg_dim != self.d:
            raise DimensionMismatchError(f"B must be {self.d}x{self.d}, got {B.dim}x{B.dim} on {B.leg_count} legs")
        if not B.is_constant():
            raise PreconditionError("B must not depend on λ")

        rsym = commutes_check("lift_r", "(B⊗B)R(λ) = R(λ)(B⊗B)", kron(B, B), self.chain.bundle.r_spec)
        anchor = "(B⊗B^⊗N)T(λ) = T(λ)(B⊗B^⊗N)"
        power = tensor_power(B, self.N)
        if rsym.passed:
            tsym = commutes_check("lift_t", anchor, kron(B, power), self.chain.monodromy)
        else:
            tsym = CheckResult.skip("lift_t", anchor, "R-level identity fails")
        per_k = charge_entry(self.chain, power, "B^⊗N", "lift", "[B^⊗N, t^(k)] = 0", asserted=[]).per_k
        return LiftReport(rsym=rsym, tsym=tsym, per_k=per_k)

    def verify_m_symmetry(self, sym: DiagonalSymmetry) -> SymmetryReport:
        # 1. Automorphism and cocycle preconditions
        if len(sym.f) != self.d or len(sym.alpha) != self.d:
            raise MalformedInputError(f"f and α need {self.d} entries each")
        require_automorphism(self.sol, sym.f)
        bad = cocycle_violation(self.sol, sym.alpha)
        if bad is not None:
            x, y = bad
            s, t = self.sol.apply(x, y)
            a = sym.alpha
            logger.error(f"Cocycle condition fails at ({x}, {y})")
            raise CocycleError(
                f"α_{x} α_{y} = {a[x] * a[y]} but α_{s} α_{t} = {a[s] * a[t]} at (x, y) = ({x}, {y})"
            )

        # 2. R-level identity, then every charge
        M = diagonal_operator(sym, self.d)
        r_level = commutes_check("m_r_level", "(M⊗M)r = r(M⊗M)", kron(M, M), self.chain.bundle.r_const, note=sym.describe())
        entry = charge_entry(self.chain, tensor_power(M, self.N), sym.describe(), "m_symmetry", "[M^⊗N, t(λ)] = 0")
        return self._report("m_symmetry", [r_level], [entry])

    def orbit_projector_symmetry(self) -> SymmetryReport:
        """Multidegree components of M^⊗N for M = Σ_j α_j M_j over the orbits Q_j."""
        blocks = orbits(self.sol)
        block_of = {x: j for j, block in enumerate(blocks) for x in block}
        components: Dict[Tuple[int, ...], Dict[Tuple[int, int], int]] = defaultdict(dict)
        for index in range(self.d ** self.N):
            counts = [0] * len(blocks)
            for digit in to_digits(index, self.N, self.d):
                counts[block_of[digit]] += 1
            components[tuple(counts)][(index, index)] = 1

        entries = [
            charge_entry(
                self.chain,
                LegMatrix(self.N, self.d, cells),
                f"orbit counts {list(counts)} over {blocks}",
                "orbit_projector",
                "[Σ M_{i1}⊗…⊗M_{iN}, t(λ)] = 0",
            )
            for counts, cells in sorted(components.items())
        ]
        return self._report("orbit_projector", [], entries)

    def fixed_element_gl(self) -> SymmetryReport:
        """gl_α from the elements x with ř(x, y) = (y, x) for every y."""
        fixed = fixed_elements(self.sol)
        r = self.chain.bundle.r_const
        one = LegMatrix.identity(1, self.d)
        preconditions: List[CheckResult] = []
        entries: List[SymmetryEntry] = []
        for i, j in product(fixed, repeat=2):
            e = LegMatrix.elementary(self.d, i, j)
            label = f"e_{{{i},{j}}}"
            preconditions.append(commutes_check("gl_coproduct", "Δ(e)r = rΔ(e)", kron(e, one) + kron(one, e), r, note=label))
            preconditions.append(commutes_check("gl_square", "(e⊗e)r = r(e⊗e)", kron(e, e), r, note=label))
            entries.append(
                charge_entry(self.chain, site_sum(e, self.N), f"Δ^(N)({label})", "fixed_gl", "[Δ^(N)(e_{x_i,x_j}), t(λ)] = 0")
            )
            # n = 1 is Δ^(N) itself
            for count in range(2, self.N + 1):
                entries.append(
                    charge_entry(
                        self.chain,
                        elementary_sum(e, count, self.N),
                        f"Σ_{{m1<…<m{count}}} {label}_m1…{label}_m{count}",
                        "gl_elementary_sum",
                        "[Σ_{m1<…<mn} e_{m1}…e_{mn}, t(λ)] = 0",
                    )
                )
        if not fixed:
            logger.info(f"{self.sol.name or '<unnamed>'} has no fixed elements")
        return self._report("fixed_gl", preconditions, entries)

    def square_free_symmetry(self) -> SymmetryReport:
        """e_{x_i,x_j}^⊗N for square-free x_i, x_j; k = 0 is recorded, not asserted."""
        points = square_free_elements(self.sol)
        bundle = self.chain.bundle
        preconditions: List[CheckResult] = []
        entries: List[SymmetryEntry] = []
        for i, j in product(points, repeat=2):
            e = LegMatrix.elementary(self.d, i, j)
            label = f"e_{{{i},{j}}}"
            power = tensor_power(e, self.N)
            preconditions.append(commutes_check("sf_two_site", "(e⊗e)ř = ř(e⊗e)", kron(e, e), bundle.check_const, note=label))
            if self.N >= 2:
                adjacent = CheckResult(check="sf_adjacent", anchor="[e^⊗N, ř_{n,n+1}] = 0", passed=True)
                for n in range(1, self.N):
                    result = commutes_check(adjacent.check, adjacent.anchor, power, site_check(bundle, self.N, n, n + 1), note=f"{label}, n={n}")
                    if not result.passed:
                        adjacent = result
                        break
                preconditions.append(adjacent)
                preconditions.append(
                    commutes_check("sf_wrap", "[e^⊗N, ř_{N1}] = 0", power, site_check(bundle, self.N, self.N, 1), note=label)
                )
            entries.append(
                charge_entry(
                    self.chain,
                    power,
                    f"{label}^⊗N",
                    "square_free",
                    "[e_{x_i,x_j}^⊗N, t^(k)] = 0, k = 1..N",
                    asserted=range(1, self.N + 1),
                )
            )
        return self._report("square_free", preconditions, entries)

    def character_sweep(self) -> SymmetryReport:
        """Every automorphism paired with every instantiated character."""
        preconditions: List[CheckResult] = []
        entries: List[SymmetryEntry] = []
        for hom in automorphisms(self.sol):
            for sym in solve_cocycle(self.sol, hom.mapping).symmetries():
                report = self.verify_m_symmetry(sym)
                preconditions.extend(report.preconditions)
                entries.extend(report.entries)
        return self._report("character_sweep", preconditions, entries)

def central_symmetry(
    brace: FiniteBrace,
    subset: Optional[Iterable[int]],
    a: int,
    b: int,
    c: int,
    sites: int,
    budget: Optional[int] = None,
) -> SymmetryReport:
    """[e_{x,y}^⊗N, t^(k)] = 0 for all k, with x = σ_b(a), y = σ_c(a), a central and N odd."""
    # 1. Named preconditions
    for name, value in (("a", a), ("b", b), ("c", c)):
        if not 0 <= value < brace.size:
            raise MalformedInputError(f"{name} = {value} is not an element of a brace of size {brace.size}")
    if sites % 2 == 0:
        raise PreconditionError(f"N odd: got N = {sites}")
    for z in range(brace.size):
        if brace.circle[a][z] != brace.circle[z][a]:
            raise PreconditionError(f"a central: {a}∘{z} != {z}∘{a}")
    if brace.add[a][a] != 0:
        raise PreconditionError(f"a+a = 0: {a}+{a} = {brace.add[a][a]}")
    if brace.circle[a][a] != 0:
        raise PreconditionError(f"a∘a = 0: {a}∘{a} = {brace.circle[a][a]}")

    # 2. x = b·a + a and y = c·a + a inside X
    sol = from_brace(brace, subset)
    x, y = brace.sigma(b, a), brace.sigma(c, a)
    for name, value in (("σ_b(a)", x), ("σ_c(a)", y)):
        if value not in sol.labels:
            raise PreconditionError(f"{name} = {value} lies outside X")

    # 3. Every charge, including t^(0)
    chain = build_chain(sol, sites, budget)
    e = LegMatrix.elementary(sol.size, sol.index_of(x), sol.index_of(y))
    entry = charge_entry(chain, tensor_power(e, sites), f"e_{{{x},{y}}}^⊗{sites}", "central", "[e_{x,y}^⊗N, t(λ)] = 0")
    return SymmetryService(chain)._report("central", [], [entry])
