"""
Chain service: monodromy and transfer matrices of a periodic chain, the charges
t^(k) and Hamiltonians H^(k), and their exact verification.
"""
import logging
from itertools import product
from typing import List, Optional, Sequence, Tuple

from chain.schemas import ChainSummary, ChainSystem, ClosedFormReport
from config import settings
from core.exceptions import BudgetExceededError, PreconditionError
from core.schemas import CheckResult
from exact.checks import equality_check, grid_check
from exact.grid import at, grid_verify_identity
from exact.legmatrix import (
    LegMatrix,
    from_digits,
    permutation_operator,
    product_of,
    sum_of,
    tensor_embed,
)
from exact.poly import Scalar
from rmatrix.schemas import RBundle
from rmatrix.services import build, build_unchecked
from solution.schemas import SetSolution

logger = logging.getLogger(__name__)

def ensure_budget(leg_dim: int, legs: int, budget: Optional[int] = None) -> None:
    budget = settings.BASIS_BUDGET if budget is None else budget
    states = leg_dim ** legs
    if states > budget:
        logger.error(f"{legs} legs of dimension {leg_dim} need {states} basis states (budget {budget})")
        raise BudgetExceededError(f"{leg_dim}^{legs} = {states} basis states exceed the budget of {budget}")

def monodromy(bundle: RBundle, aux_leg: int, site_legs: Sequence[int], total_legs: int) -> LegMatrix:
    """T_0(λ) = R_{0N}(λ) … R_{02}(λ) R_{01}(λ)."""
    factors = [tensor_embed(bundle.r_spec, (aux_leg, leg), total_legs) for leg in reversed(site_legs)]
    return product_of(factors, total_legs, bundle.leg_dim)

def shift_operator(leg_dim: int, sites: int) -> LegMatrix:
    """Π = 𝒫12 𝒫23 … 𝒫_{N−1,N}."""
    perm = permutation_operator(leg_dim)
    factors = [tensor_embed(perm, (n - 1, n), sites) for n in range(1, sites)]
    return product_of(factors, sites, leg_dim)

def build_chain(sol: SetSolution, sites: int, budget: Optional[int] = None, validate: bool = True) -> ChainSystem:
    """Monodromy, charges and Hamiltonians; validate=False accepts arbitrary tables."""
    if sites < 1:
        raise PreconditionError("A chain needs at least one site")
    # 1. Memory budget on the auxiliary-plus-quantum space
    ensure_budget(sol.size, sites + 1, budget)

    # 2. Monodromy on legs 0 (auxiliary) and 1..N
    bundle = build(sol) if validate else build_unchecked(sol)
    total = monodromy(bundle, 0, list(range(1, sites + 1)), sites + 1)

    # 3. Transfer matrix and its coefficients, t(λ) = Σ_k t^(k) λ^(N−k)
    transfer = total.partial_trace(0)
    t_coeffs = [transfer.coefficient(sites - k) for k in range(sites + 1)]

    # 4. Shift operator and Hamiltonians
    shift = shift_operator(sol.size, sites)
    shift_inverse = shift.transpose()
    hams = [t_coeffs[k] @ shift_inverse for k in range(1, sites)] + [shift]

    logger.info(f"Built chain for {sol.name or '<unnamed>'} on {sites} sites (dim {sol.size ** sites})")
    return ChainSystem(
        sol=sol,
        sites=sites,
        bundle=bundle,
        monodromy=total,
        t_coeffs=t_coeffs,
        shift=shift,
        hams=hams,
    )

def verify_commuting(chain: ChainSystem) -> Tuple[CheckResult, int]:
    """[t^(k), t^(l)] = 0 for all 0 <= k <= l <= N."""
    pairs = [(k, l) for k in range(chain.sites + 1) for l in range(k, chain.sites + 1)]
    anchor = "[t(λ), t(μ)] = 0 ⇒ [t^(k), t^(l)] = 0"
    for k, l in pairs:
        result = equality_check("commuting", anchor, chain.t(k) @ chain.t(l), chain.t(l) @ chain.t(k), note=f"k={k}, l={l}")
        if not result.passed:
            logger.info(f"t^({k}) and t^({l}) do not commute")
            return result, pairs.index((k, l)) + 1
    return CheckResult(check="commuting", anchor=anchor, passed=True, detail=f"{len(pairs)} pairs"), len(pairs)

def verify_rtt(sol: SetSolution, sites: int, budget: Optional[int] = None, bound: Optional[int] = None) -> CheckResult:
    """Ř12(λ1−λ2) T1(λ1) T2(λ2) = T1(λ2) T2(λ1) Ř12(λ1−λ2) with two auxiliary legs."""
    legs = sites + 2
    ensure_budget(sol.size, legs, budget)
    bundle = build(sol)
    quantum = list(range(2, legs))
    first = monodromy(bundle, 0, quantum, legs)
    second = monodromy(bundle, 1, quantum, legs)
    exchange = tensor_embed(bundle.check_spec, (0, 1), legs)
    verdict = grid_verify_identity(
        [at(exchange, 1, -1), at(first, 1, 0), at(second, 0, 1)],
        [at(first, 0, 1), at(second, 1, 0), at(exchange, 1, -1)],
        sites + 1 if bound is None else bound,
    )
    return grid_check("rtt", "Ř12(λ1−λ2)T1(λ1)T2(λ2) = T1(λ2)T2(λ1)Ř12(λ1−λ2)", verdict)

def site_check(bundle: RBundle, sites: int, a: int, b: int) -> LegMatrix:
    """ř on sites a, b (1-based) of an N-site chain."""
    return tensor_embed(bundle.check_const, (a - 1, b - 1), sites)

def shift_word(bundle: RBundle, sites: int, n: int, m: int) -> LegMatrix:
    """ℜ_{n;m} = ř_{n−1,n} ř_{n−2,n−1} … ř_{m,m+1}; the identity when n = m."""
    factors = [site_check(bundle, sites, j, j + 1) for j in range(n - 1, m - 1, -1)]
    return product_of(factors, sites, bundle.leg_dim)

def wrap_op(chain: ChainSystem) -> LegMatrix:
    """ř_{N1}: the periodic term."""
    return chain.check_op(chain.sites, 1)

def closed_form_top(chain: ChainSystem) -> LegMatrix:
    """H^(N−1) = Σ_{n=1}^{N−1} ř_{n,n+1} + ř_{N1}."""
    terms = [chain.check_op(n, n + 1) for n in range(1, chain.sites)] + [wrap_op(chain)]
    return sum_of(terms, chain.sites, chain.leg_dim)

def closed_form_second(chain: ChainSystem) -> LegMatrix:
    """H^(N−2): ordered pairs of bulk terms plus the two families of wrap terms."""
    N = chain.sites
    wrap = wrap_op(chain)
    terms = [
        chain.check_op(n, n + 1) @ chain.check_op(m, m + 1)
        for m in range(1, N)
        for n in range(m + 1, N)
    ]
    terms += [chain.check_op(n, n + 1) @ wrap for n in range(1, N - 1)]
    terms.append(wrap @ chain.check_op(N - 1, N))
    return sum_of(terms, N, chain.leg_dim)

def closed_form_first(chain: ChainSystem) -> LegMatrix:
    """H^(1) = Σ_{n=1}^{N−1} ℜ_{n;1} ř_{N1} ℜ_{N;n+1} + ℜ_{N;1}."""
    N = chain.sites
    wrap = wrap_op(chain)
    terms = [shift_word(chain.bundle, N, n, 1) @ wrap @ shift_word(chain.bundle, N, N, n + 1) for n in range(1, N)]
    terms.append(shift_word(chain.bundle, N, N, 1))
    return sum_of(terms, N, chain.leg_dim)

def closed_form_bottom(chain: ChainSystem) -> LegMatrix:
    """t^(0) as the constrained sum over x_1..x_N and y_N with y_n = σ_{x_{n+1}}(y_{n+1})."""
    sol, N, d = chain.sol, chain.sites, chain.leg_dim
    counts = {}
    for xs in product(range(d), repeat=N):
        for y_last in range(d):
            ys = [0] * N
            ys[N - 1] = y_last
            for n in range(N - 2, -1, -1):
                ys[n] = sol.sigma[xs[n + 1]][ys[n + 1]]
            if sol.sigma[xs[0]][ys[0]] != y_last:
                continue
            row = from_digits(xs, d)
            col = from_digits([sol.tau[ys[n]][xs[n]] for n in range(N)], d)
            counts[(row, col)] = counts.get((row, col), 0) + 1
    return LegMatrix(N, d, counts)

def verify_closed_forms(chain: ChainSystem) -> ClosedFormReport:
    N = chain.sites
    tN = equality_check("tN", "t^(N) = Π", chain.t(N), chain.shift)
    t0 = equality_check("t0", "t^(0) = constrained sum over (x, y) with y_n = σ_{x_{n+1}}(y_{n+1})", chain.t(0), closed_form_bottom(chain))

    anchor = "H^(N−1) = Σ_n ř_{n,n+1} with ř_{N,N+1} = ř_{N1}"
    if N >= 2:
        hNm1 = equality_check("hNm1", anchor, chain.ham(N - 1), closed_form_top(chain))
    else:
        hNm1 = CheckResult.skip("hNm1", anchor, "needs N >= 2")

    anchor = "H^(N−2) = Σ_{m<n} ř_{n,n+1}ř_{m,m+1} + Σ_n ř_{n,n+1}ř_{N1} + ř_{N1}ř_{N−1,N}"
    if N >= 3:
        hNm2 = equality_check("hNm2", anchor, chain.ham(N - 2), closed_form_second(chain))
    else:
        hNm2 = CheckResult.skip("hNm2", anchor, "needs N >= 3")

    anchor = "H^(1) = Σ_n ℜ_{n;1} ř_{N1} ℜ_{N;n+1} + ℜ_{N;1}"
    if N >= 2:
        h1 = equality_check("h1", anchor, chain.ham(1), closed_form_first(chain))
    else:
        h1 = CheckResult.skip("h1", anchor, "needs N >= 2")

    return ClosedFormReport(tN=tN, hNm1=hNm1, hNm2=hNm2, h1=h1, t0=t0)

def verify_shift_action(bundle: RBundle, sites: int) -> List[CheckResult]:
    """ℜ_{N;1} moves ř_{n,n+1} one site left, with the two boundary identities."""
    if sites < 4:
        raise PreconditionError(f"Shift action needs N >= 4, got {sites}")
    N = sites

    def op(a: int, b: int) -> LegMatrix:
        return site_check(bundle, N, a, b)

    word = shift_word(bundle, N, N, 1)

    bulk = CheckResult(check="shift_bulk", anchor="ℜ_{N;1} ř_{n,n+1} = ř_{n−1,n} ℜ_{N;1}", passed=True)
    for n in range(2, N - 1):
        result = equality_check(
            bulk.check, bulk.anchor, word @ op(n, n + 1), op(n - 1, n) @ word, note=f"n={n}"
        )
        if not result.passed:
            bulk = result
            break
    left = equality_check("shift_left_end", "ℜ_{N;1} ř_{12} = ℜ_{N;2}", word @ op(1, 2), shift_word(bundle, N, N, 2))
    right = equality_check(
        "shift_right_end", "ř_{N−1,N} ℜ_{N;1} = ℜ_{N−1;1}", op(N - 1, N) @ word, shift_word(bundle, N, N - 1, 1)
    )
    return [bulk, left, right]

def verify_trace_consistency(chain: ChainSystem, point: Scalar = 2) -> CheckResult:
    """Σ_k t^(k) λ^(N−k) at a point equals tr_0 of the monodromy at that point."""
    N = chain.sites
    expanded = sum_of(
        [chain.t(k).scale(point ** (N - k)) for k in range(N + 1)],
        N,
        chain.leg_dim,
    )
    traced = chain.monodromy.evaluate(point).partial_trace(0)
    return equality_check("trace_consistency", f"Σ_k t^(k) λ^(N−k) = tr_0 T(λ) at λ = {point}", expanded, traced)

def verify_shift(chain: ChainSystem) -> List[CheckResult]:
    """Π is a permutation matrix of order dividing N."""
    power = product_of([chain.shift] * chain.sites, chain.sites, chain.leg_dim)
    return [
        CheckResult(
            check="shift_permutation",
            anchor="Π is a permutation matrix",
            passed=chain.shift.is_permutation_matrix(),
        ),
        equality_check("shift_order", "Π^N = I", power, chain.identity()),
    ]

def summarize(chain: ChainSystem, commuting_pairs: int, closed_forms: Optional[ClosedFormReport] = None) -> ChainSummary:
    forms = {}
    if closed_forms is not None:
        forms = {check.check: check.passed for check in closed_forms.checks() if not check.skipped}
    return ChainSummary(sites=chain.sites, dim=chain.dim, commuting_pairs_checked=commuting_pairs, closed_forms=forms)
