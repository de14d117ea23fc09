"""
R-matrix service: Baxterized matrices of a set-theoretic solution and the exact
verification of their braid, Yang-Baxter, Hecke and unitarity identities.
"""
import logging
from typing import Dict, Iterable, List, Optional, Tuple

from config import settings
from core.schemas import CheckResult
from exact.checks import equality_check, grid_check
from exact.grid import at, grid_verify_identity
from exact.legmatrix import LegMatrix, permutation_operator, tensor_embed
from exact.poly import Poly
from rmatrix.schemas import RBundle, SpectralReport
from solution.schemas import SetSolution
from solution.services import require_valid

logger = logging.getLogger(__name__)

def _pairs_matrix(d: int, pairs: Iterable[Tuple[Tuple[int, int], Tuple[int, int]]]) -> LegMatrix:
    """Σ e_{row} ⊗ e_{col} over ((row0, row1), (col0, col1)) pairs."""
    counts: Dict[Tuple[int, int], int] = {}
    for (r0, r1), (c0, c1) in pairs:
        key = (r0 * d + r1, c0 * d + c1)
        counts[key] = counts.get(key, 0) + 1
    return LegMatrix(2, d, counts)

def check_matrix(sol: SetSolution) -> LegMatrix:
    """ř = Σ e_{x,σ_x(y)} ⊗ e_{y,τ_y(x)}."""
    d = sol.size
    return _pairs_matrix(d, (((x, y), sol.apply(x, y)) for x in range(d) for y in range(d)))

def r_matrix(sol: SetSolution) -> LegMatrix:
    """r = Σ e_{y,σ_x(y)} ⊗ e_{x,τ_y(x)}."""
    d = sol.size
    return _pairs_matrix(d, (((y, x), sol.apply(x, y)) for x in range(d) for y in range(d)))

def r_matrix_alt(sol: SetSolution) -> LegMatrix:
    """r = Σ e_{τ_y(x),x} ⊗ e_{σ_x(y),y}, the form that relies on involutivity."""
    d = sol.size
    pairs = []
    for x in range(d):
        for y in range(d):
            s, t = sol.apply(x, y)
            pairs.append(((t, s), (x, y)))
    return _pairs_matrix(d, pairs)

def build_unchecked(sol: SetSolution) -> RBundle:
    """Matrices straight from the tables, without validating the solution."""
    d = sol.size
    lam = Poly.lam()
    check_const = check_matrix(sol)
    r_const = r_matrix(sol)
    perm = permutation_operator(d)
    identity = LegMatrix.identity(2, d)
    return RBundle(
        sol=sol,
        check_const=check_const,
        r_const=r_const,
        perm=perm,
        check_spec=check_const.scale(lam) + identity,
        r_spec=r_const.scale(lam) + perm,
    )

def build(sol: SetSolution) -> RBundle:
    require_valid(sol)
    bundle = build_unchecked(sol)
    logger.info(f"Built R-matrix bundle for {sol.name or '<unnamed>'} (dim {sol.size ** 2})")
    return bundle

def verify_dual_forms(bundle: RBundle) -> CheckResult:
    return equality_check(
        "dual_forms",
        "Σ e_{y,σ_x(y)}⊗e_{x,τ_y(x)} = Σ e_{τ_y(x),x}⊗e_{σ_x(y),y}",
        bundle.r_const,
        r_matrix_alt(bundle.sol),
    )

def verify_bundle_invariants(bundle: RBundle) -> List[CheckResult]:
    d = bundle.leg_dim
    identity = LegMatrix.identity(2, d)
    checks = [
        equality_check("check_squared", "ř² = I", bundle.check_const @ bundle.check_const, identity),
        equality_check("r_is_perm_check", "r = 𝒫ř", bundle.r_const, bundle.perm @ bundle.check_const),
        equality_check("check_spec_is_perm_r_spec", "Ř(λ) = 𝒫R(λ)", bundle.check_spec, bundle.perm @ bundle.r_spec),
    ]
    nnz = bundle.check_const.nnz
    checks.append(
        CheckResult(
            check="check_nonzero_count",
            anchor="ř has exactly 𝒩² nonzero entries",
            passed=nnz == d * d,
            detail=f"{nnz} nonzero entries",
        )
    )
    return checks

def hecke_generators(bundle: RBundle, sites: int) -> List[LegMatrix]:
    """g_i = ř acting on sites i, i+1 (legs i−1, i) for i = 1..N−1."""
    return [tensor_embed(bundle.check_const, (i - 1, i), sites) for i in range(1, sites)]

def verify_hecke(bundle: RBundle, sites: int) -> List[CheckResult]:
    """Braid, far-commutation and g² = I (Hecke algebra at q = 1)."""
    g = hecke_generators(bundle, sites)
    identity = LegMatrix.identity(sites, bundle.leg_dim)

    # 1. g_i g_{i+1} g_i = g_{i+1} g_i g_{i+1}
    braid = CheckResult(check="hecke_braid", anchor="g_i g_{i+1} g_i = g_{i+1} g_i g_{i+1}", passed=True)
    for i in range(len(g) - 1):
        result = equality_check(braid.check, braid.anchor, g[i] @ g[i + 1] @ g[i], g[i + 1] @ g[i] @ g[i + 1], note=f"i={i + 1}")
        if not result.passed:
            braid = result
            break

    # 2. [g_i, g_j] = 0 for |i − j| > 1
    commute = CheckResult(check="hecke_commute", anchor="g_i g_j = g_j g_i for |i−j| > 1", passed=True)
    pairs = [(i, j) for i in range(len(g)) for j in range(i + 2, len(g))]
    for i, j in pairs:
        result = equality_check(commute.check, commute.anchor, g[i] @ g[j], g[j] @ g[i], note=f"i={i + 1}, j={j + 1}")
        if not result.passed:
            commute = result
            break

    # 3. (g_i − 1)(g_i + 1) = 0
    quadratic = CheckResult(check="hecke_quadratic", anchor="(g_i − q)(g_i + q⁻¹) = 0 at q = 1", passed=True)
    for i in range(len(g)):
        result = equality_check(quadratic.check, quadratic.anchor, g[i] @ g[i], identity, note=f"i={i + 1}")
        if not result.passed:
            quadratic = result
            break

    return [braid, commute, quadratic]

def verify_ybe(bundle: RBundle, bound: int) -> Tuple[CheckResult, CheckResult]:
    """Braid and standard Yang-Baxter equations with two spectral parameters."""
    check12 = tensor_embed(bundle.check_spec, (0, 1), 3)
    check23 = tensor_embed(bundle.check_spec, (1, 2), 3)
    ybe_braid = grid_verify_identity(
        [at(check12, 1, -1), at(check23, 1, 0), at(check12, 0, 1)],
        [at(check23, 0, 1), at(check12, 1, 0), at(check23, 1, -1)],
        bound,
    )
    r12 = tensor_embed(bundle.r_spec, (0, 1), 3)
    r13 = tensor_embed(bundle.r_spec, (0, 2), 3)
    r23 = tensor_embed(bundle.r_spec, (1, 2), 3)
    ybe_standard = grid_verify_identity(
        [at(r12, 1, -1), at(r13, 1, 0), at(r23, 0, 1)],
        [at(r23, 0, 1), at(r13, 1, 0), at(r12, 1, -1)],
        bound,
    )
    return (
        grid_check("ybe_braid", "Ř12(λ1−λ2)Ř23(λ1)Ř12(λ2) = Ř23(λ2)Ř12(λ1)Ř23(λ1−λ2)", ybe_braid),
        grid_check("ybe_standard", "R12(λ1−λ2)R13(λ1)R23(λ2) = R23(λ2)R13(λ1)R12(λ1−λ2)", ybe_standard),
    )

def verify_unitarity(bundle: RBundle) -> CheckResult:
    r21 = tensor_embed(bundle.r_spec, (1, 0), 2)
    lam = Poly.lam()
    return equality_check(
        "unitarity",
        "R12(λ)R21(−λ) = (1−λ²)I",
        bundle.r_spec @ r21.compose_linear(-1, 0),
        LegMatrix.identity(2, bundle.leg_dim).scale(1 - lam * lam),
    )

def verify_spectral(bundle: RBundle, bound: Optional[int] = None) -> SpectralReport:
    bound = settings.GRID_BOUND if bound is None else bound
    d = bundle.leg_dim
    identity = LegMatrix.identity(2, d)
    lam = Poly.lam()

    # 1. Two-parameter equations on the grid
    ybe_braid, ybe_standard = verify_ybe(bundle, bound)

    # 2. Unitarity
    unitarity = verify_unitarity(bundle)
    r21 = tensor_embed(bundle.r_spec, (1, 0), 2)

    # 3. Crossing-unitarity with shift 𝒩
    r_t1 = bundle.r_spec.partial_transpose(0)
    r_t2 = bundle.r_spec.partial_transpose(1)
    crossing = equality_check(
        "crossing",
        "R12^{t1}(λ)R12^{t2}(−λ−𝒩) = λ(−λ−𝒩)I",
        r_t1 @ r_t2.compose_linear(-1, -d),
        identity.scale(lam * (-lam - d)),
    )

    # 4. Full transposition swaps the legs
    t1t2 = equality_check("t1t2", "R12^{t1t2}(λ) = R21(λ)", r_t1.partial_transpose(1), r21)

    # 5. Constant identities behind crossing
    perm_t1 = bundle.perm.partial_transpose(0)
    small_r_t1 = bundle.r_const.partial_transpose(0)
    small_r_t2 = bundle.r_const.partial_transpose(1)
    transposed_perm = [
        equality_check("transposed_perm_square", "(𝒫^{t1})² = 𝒩𝒫^{t1}", perm_t1 @ perm_t1, perm_t1.scale(d)),
        equality_check("transposed_perm_absorb_left", "r^{t1}𝒫^{t1} = 𝒫^{t1}", small_r_t1 @ perm_t1, perm_t1),
        equality_check("transposed_perm_absorb_right", "𝒫^{t1}r^{t2} = 𝒫^{t1}", perm_t1 @ small_r_t2, perm_t1),
        equality_check("transposed_inverse", "r^{t1}r^{t2} = I", small_r_t1 @ small_r_t2, identity),
    ]
    return SpectralReport(
        ybe_braid=ybe_braid,
        ybe_standard=ybe_standard,
        unitarity=unitarity,
        crossing=crossing,
        t1t2=t1t2,
        transposed_perm=transposed_perm,
    )
