"""
Acceptance service: every verification family over a corpus of solutions, plus
the seeded mutation-robustness harness.
"""
import logging
import random
from itertools import combinations
from typing import Any, Dict, List, Optional

from brace.schemas import BraceIdeal
from brace.services import central_involutive_elements, validate_ideal
from chain.services import (
    build_chain,
    verify_closed_forms,
    verify_commuting,
    verify_rtt,
    verify_shift,
    verify_shift_action,
    verify_trace_consistency,
)
from config import settings
from core.exceptions import PreconditionError, WorkbenchError
from core.schemas import CheckResult, CommandResult, Witness
from qalgebra.services import QAlgebraService
from rmatrix.services import build, build_unchecked, verify_bundle_invariants, verify_dual_forms, verify_hecke, verify_spectral, verify_unitarity
from solution.schemas import SetSolution
from solution.services import (
    fixed_elements,
    multipermutation_level,
    mutate_sigma,
    orbits,
    square_free_elements,
    validate_solution,
)
from suite.corpus import Corpus, CorpusEntry
from symmetry.services import SymmetryService, central_symmetry

logger = logging.getLogger(__name__)

HECKE_SITES = (3, 4)
CLOSED_FORM_MAX_SITES = 4
RTT_MAX_SITES = 2
RTT_MAX_LEG_DIM = 3
YANGIAN_MAX_SIZE = 3

class SuiteService:
    """Runs the acceptance families with one set of size limits."""

    def __init__(self, max_sites: int = 4, max_level: Optional[int] = None, budget: Optional[int] = None):
        self.max_sites = max_sites
        self.max_level = settings.MAX_LEVEL if max_level is None else max_level
        self.budget = settings.BASIS_BUDGET if budget is None else budget
        self.qalgebra = QAlgebraService(self.max_level)

    def _fits(self, d: int, legs: int, cap: Optional[int] = None) -> bool:
        return d ** legs <= min(self.budget, cap if cap is not None else self.budget)

    def verify_entry(self, entry: CorpusEntry) -> CommandResult:
        sol = entry.solution
        d = sol.size
        checks: List[CheckResult] = []
        skipped: List[str] = []

        # 1. Solution tables and the constant R-matrices
        checks.extend(validate_solution(sol).checks())
        bundle = build(sol)
        checks.append(verify_dual_forms(bundle))
        checks.extend(verify_bundle_invariants(bundle))
        checks.extend(verify_spectral(bundle).checks())
        for sites in HECKE_SITES:
            if sites <= self.max_sites and self._fits(d, sites):
                checks.extend(c.renamed(f"N={sites}") for c in verify_hecke(bundle, sites))

        # 2. Chains within the check cap
        for sites in range(1, self.max_sites + 1):
            if not self._fits(d, sites + 1) or not self._fits(d, sites, settings.CHECK_MAX_DIM):
                skipped.append(f"chain N={sites}: {d}^{sites} exceeds the check cap")
                continue
            chain = build_chain(sol, sites, self.budget)
            prefix = f"N={sites}"
            commuting, _ = verify_commuting(chain)
            checks.append(commuting.renamed(prefix))
            checks.append(verify_trace_consistency(chain).renamed(prefix))
            checks.extend(c.renamed(prefix) for c in verify_shift(chain))
            if sites <= CLOSED_FORM_MAX_SITES:
                checks.extend(c.renamed(prefix) for c in verify_closed_forms(chain).checks())

            symmetries = SymmetryService(chain)
            for report in (
                symmetries.fixed_element_gl(),
                symmetries.orbit_projector_symmetry(),
                symmetries.square_free_symmetry(),
            ):
                checks.extend(c.renamed(prefix) for c in report.checks())
            if d <= settings.ISO_MAX_SIZE:
                checks.extend(c.renamed(prefix) for c in symmetries.character_sweep().checks())

        # 3. Shift action and RTT
        if self.max_sites >= 4 and self._fits(d, 4):
            checks.extend(c.renamed("N=4") for c in verify_shift_action(bundle, 4))
        if d <= RTT_MAX_LEG_DIM:
            for sites in range(1, min(RTT_MAX_SITES, self.max_sites) + 1):
                if self._fits(d, sites + 2):
                    checks.append(verify_rtt(sol, sites, self.budget).renamed(f"N={sites}"))

        # 4. Central elements of the underlying brace
        if entry.brace is not None:
            checks.extend(self.central_checks(entry))

        # 5. Quantum algebra
        checks.extend(self.qalgebra_checks(entry))

        data = {
            "size": d,
            "orbits": orbits(sol),
            "multipermutation_level": multipermutation_level(sol),
            "fixed_elements": fixed_elements(sol),
            "square_free_elements": square_free_elements(sol),
            "skipped": skipped,
        }
        return CommandResult(checks=[c.renamed(entry.name) for c in checks], data=data)

    def central_checks(self, entry: CorpusEntry) -> List[CheckResult]:
        brace = entry.brace
        sites = 3
        checks: List[CheckResult] = []
        if not self._fits(brace.size, sites + 1):
            return checks
        seen = set()
        for a in central_involutive_elements(brace):
            for b in range(brace.size):
                for c in range(brace.size):
                    pair = (a, brace.sigma(b, a), brace.sigma(c, a))
                    if pair in seen:
                        continue
                    seen.add(pair)
                    report = central_symmetry(brace, None, a, b, c, sites, self.budget)
                    checks.extend(check.renamed(f"a={a}") for check in report.checks())
            try:
                central_symmetry(brace, None, a, 0, 0, 2, self.budget)
                rejected = False
            except PreconditionError:
                rejected = True
            checks.append(
                CheckResult(
                    check=f"a={a}/central_even_rejected",
                    anchor="N odd is required",
                    passed=rejected,
                )
            )
        return checks

    def qalgebra_checks(self, entry: CorpusEntry) -> List[CheckResult]:
        sol = entry.solution
        service = self.qalgebra
        checks: List[CheckResult] = []
        relations = service.generate_relations(sol)
        for kind in ("constant", "tensor", "graded", "linearPoly"):
            checks.append(service.check_representation(sol, relations, kind).to_check())

        ablated = service.check_representation(sol, relations, "graded", use_structure_nf=False)
        moving = any(sol.apply(x, y) != (x, y) for x in range(sol.size) for y in range(sol.size))
        if moving and self.max_level >= 1:
            checks.append(
                CheckResult(
                    check="rep_graded_ablation",
                    anchor="without xy = uv the graded image is nonzero",
                    passed=ablated.failure_count > 0,
                    detail=f"{ablated.failure_count} nonzero images",
                )
            )

        if entry.name.startswith("trivial:") and sol.size <= YANGIAN_MAX_SIZE:
            _, comparison = service.yangian_form(sol.size)
            checks.append(comparison.to_check("yangian_match", "Q − P equals the Yangian relations up to sign"))
            checks.extend(service.level01_checks(sol).checks())

        orbit_report, yangian = service.induce_orbit_quotient(sol)
        checks.append(orbit_report.to_check().renamed("orbit_quotient"))
        checks.append(yangian.to_check("orbit_quotient/yangian_match", "codomain relations are Yangian relations"))

        if entry.brace is not None:
            for ideal in proper_ideals(entry):
                report = service.induce_ideal_quotient(entry.brace, None, ideal)
                checks.append(report.to_check().renamed(f"ideal={list(ideal.elements)}"))
        return checks

    def mutation_harness(self, corpus: Corpus, samples: Optional[int] = None, seed: Optional[int] = None) -> List[CheckResult]:
        """Single-entry σ mutations must break braid, involutivity, unitarity or commutativity."""
        samples = settings.MUTATION_SAMPLES if samples is None else samples
        rng = random.Random(settings.MUTATION_SEED if seed is None else seed)
        candidates = [entry.solution for entry in corpus.entries if entry.solution.size > 1]
        checks: List[CheckResult] = []
        for sample in range(samples):
            sol = rng.choice(candidates)
            x, y = rng.randrange(sol.size), rng.randrange(sol.size)
            value = rng.choice([v for v in range(sol.size) if v != sol.sigma[x][y]])
            checks.append(self.mutation_check(sol, x, y, value).renamed(f"mutation/{sample:02d}"))
        return checks

    def mutation_check(self, sol: SetSolution, x: int, y: int, value: int) -> CheckResult:
        mutated = mutate_sigma(sol, x, y, value)
        found = [c for c in validate_solution(mutated).checks() if not c.passed]
        if not found:
            found = [c for c in [verify_unitarity(build_unchecked(mutated))] if not c.passed]
        if not found and self._fits(sol.size, 3, settings.CHECK_MAX_DIM):
            commuting, _ = verify_commuting(build_chain(mutated, 2, self.budget, validate=False))
            found = [commuting] if not commuting.passed else []
        note = f"{sol.name}: σ_{x}({y}) -> {value}"
        if found:
            first = found[0]
            return CheckResult(
                check="mutation_detected",
                anchor="a single σ mutation breaks braid, involutivity, unitarity or commutativity",
                passed=True,
                witness=first.witness,
                detail=f"{note}; caught by {first.check}",
            )
        logger.warning(f"Mutation went undetected: {note}")
        return CheckResult(
            check="mutation_detected",
            anchor="a single σ mutation breaks braid, involutivity, unitarity or commutativity",
            passed=False,
            witness=Witness(elements=[x, y, value], note=note),
        )

    def verify_all(self, corpus: Corpus, mutations: bool = True) -> CommandResult:
        checks: List[CheckResult] = []
        data: Dict[str, Any] = {"corpus": corpus.name, "entries": {}}
        for entry in corpus.entries:
            try:
                result = self.verify_entry(entry)
            except WorkbenchError as e:
                logger.warning(f"{entry.name}: {e.detail}")
                result = CommandResult(
                    checks=[CheckResult(check=f"{entry.name}/error", anchor="entry runs to completion", passed=False, detail=e.detail)]
                )
            checks.extend(result.checks)
            data["entries"][entry.name] = result.data
            logger.info(f"{entry.name}: {sum(not c.passed for c in result.checks)} of {len(result.checks)} checks failed")
        if mutations:
            checks.extend(self.mutation_harness(corpus))
        return CommandResult(checks=checks, data=data)

def proper_ideals(entry: CorpusEntry) -> List[BraceIdeal]:
    """Ideals J with {0} ⊊ J ⊊ B, by exhaustive subset search."""
    brace = entry.brace
    found = []
    others = range(1, brace.size)
    for count in range(1, brace.size - 1):
        for rest in combinations(others, count):
            ideal = BraceIdeal(elements=(0, *rest))
            if validate_ideal(brace, ideal).ok:
                found.append(ideal)
    return found
