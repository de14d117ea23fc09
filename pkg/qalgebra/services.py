"""
Quantum-algebra service: defining relations of 𝔄(X, ř), the Yangian special case,
structure-algebra representations, relation maps induced by homomorphisms and the
level-0/level-1 content of the exchange relation.
"""
import logging
from collections import defaultdict
from itertools import product
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from brace.schemas import BraceIdeal, FiniteBrace
from chain.services import verify_rtt
from config import settings
from core.exceptions import PreconditionError
from core.schemas import CheckResult, Witness
from qalgebra.schemas import (
    Deg2Class,
    InduceReport,
    Level01Report,
    QAGenerator,
    QARelation,
    RelationComparison,
    RepFailure,
    RepKind,
    RepReport,
    Term,
)
from solution.schemas import SetSolution, SolutionHom
from solution.services import check_hom, orbit_quotient, quotient_by_ideal, require_valid, trivial

logger = logging.getLogger(__name__)

# word (tuple of generators) -> integer coefficient; () is the unit
Expression = Dict[Tuple[QAGenerator, ...], int]
Normalized = Tuple[Tuple[Hashable, int], ...]
AuxMatrix = Dict[Tuple[Tuple[int, int], Tuple[int, int]], Expression]

MAX_REPORTED_FAILURES = 5

def make_relation(sol: SetSolution, x: int, j: int, y: int, i: int, n: int, m: int) -> QARelation:
    """Q − P for one tag, term order as displayed."""
    G = QAGenerator
    s, t = sol.apply(x, y)
    u, v = sol.apply(j, i)
    terms = (
        Term(1, G(s, j, n + 1), G(t, i, m)),
        Term(-1, G(s, j, n), G(t, i, m + 1)),
        Term(1, G(x, j, n), G(y, i, m)),
        Term(-1, G(x, u, m), G(y, v, n + 1)),
        Term(1, G(x, u, m + 1), G(y, v, n)),
        Term(-1, G(x, j, m), G(y, i, n)),
    )
    return QARelation(tag=(x, j, y, i, n, m), terms=terms)

def yangian_relation(x: int, j: int, y: int, i: int, n: int, m: int) -> QARelation:
    """[L^(n+1)_{y,j}, L^(m)_{x,i}] − [L^(n)_{y,j}, L^(m+1)_{x,i}] − L^(m)_{x,j}L^(n)_{y,i} + L^(n)_{x,j}L^(m)_{y,i}."""
    G = QAGenerator
    terms = (
        Term(1, G(y, j, n + 1), G(x, i, m)),
        Term(-1, G(x, i, m), G(y, j, n + 1)),
        Term(-1, G(y, j, n), G(x, i, m + 1)),
        Term(1, G(x, i, m + 1), G(y, j, n)),
        Term(-1, G(x, j, m), G(y, i, n)),
        Term(1, G(x, j, n), G(y, i, m)),
    )
    return QARelation(tag=(x, j, y, i, n, m), terms=terms)

def normalize(terms: Iterable[Term]) -> Normalized:
    """Collect equal products; drop cancelled ones; sort."""
    collected: Dict[Tuple[QAGenerator, QAGenerator], int] = defaultdict(int)
    for term in terms:
        collected[(term.left, term.right)] += term.coef
    return tuple(sorted((key, c) for key, c in collected.items() if c))

def sign_normalize(normalized: Normalized) -> Normalized:
    if normalized and normalized[0][1] < 0:
        return tuple((key, -c) for key, c in normalized)
    return normalized

def compare_relation_families(expected: Sequence[QARelation], actual: Sequence[QARelation]) -> RelationComparison:
    """Per-tag comparison modulo an overall sign."""
    left = {rel.tag: sign_normalize(normalize(rel.terms)) for rel in expected}
    right = {rel.tag: sign_normalize(normalize(rel.terms)) for rel in actual}
    return RelationComparison(
        expected_count=len(left),
        actual_count=len(right),
        missing_tags=[list(tag) for tag in sorted(left.keys() - right.keys())],
        extra_tags=[list(tag) for tag in sorted(right.keys() - left.keys())],
        mismatched_tags=[list(tag) for tag in sorted(left.keys() & right.keys()) if left[tag] != right[tag]],
    )

def structure_nf(sol: SetSolution, x: int, y: int) -> Deg2Class:
    """Lexicographic minimum of {(x, y), ř(x, y)}."""
    return Deg2Class(*min((x, y), sol.apply(x, y)))

def map_relation(rel: QARelation, mapping: Sequence[int]) -> QARelation:
    """Rename every index through f, levels untouched."""
    f = mapping
    x, j, y, i, n, m = rel.tag

    def rename(g: QAGenerator) -> QAGenerator:
        return QAGenerator(f[g.z], f[g.w], g.level)

    return QARelation(
        tag=(f[x], f[j], f[y], f[i], n, m),
        terms=tuple(Term(t.coef, rename(t.left), rename(t.right)) for t in rel.terms),
    )

def export_relations(relations: Iterable[QARelation]) -> List[dict]:
    return [
        {
            "tag": list(rel.tag),
            "terms": [
                {"coef": t.coef, "left": list(t.left), "right": list(t.right)}
                for t in rel.terms
            ],
        }
        for rel in sorted(relations, key=lambda rel: rel.tag)
    ]

def render_expression(expression: Expression) -> str:
    if not expression:
        return "0"
    parts = []
    for word, coef in sorted(expression.items()):
        body = "·".join(str(g) for g in word) or "1"
        parts.append(f"{'-' if coef < 0 else '+'} {'' if abs(coef) == 1 else f'{abs(coef)}·'}{body}")
    return " ".join(parts).lstrip("+ ")

# Formal auxiliary-matrix calculus for L_1^(a) L_2^(b)

def _generator(level: int, z: int, w: int) -> Expression:
    """L^(level)_{z,w} with L^(0) = I."""
    if level == 0:
        return {(): 1} if z == w else {}
    return {(QAGenerator(z, w, level),): 1}

def _times(a: Expression, b: Expression) -> Expression:
    out: Expression = defaultdict(int)
    for wa, ca in a.items():
        for wb, cb in b.items():
            out[wa + wb] += ca * cb
    return {word: c for word, c in out.items() if c}

def aux_product(size: int, a: int, b: int) -> AuxMatrix:
    """Entry ((x, y), (j, i)) of L_1^(a) L_2^(b) is L^(a)_{x,j} L^(b)_{y,i}."""
    return {
        ((x, y), (j, i)): _times(_generator(a, x, j), _generator(b, y, i))
        for x, y, j, i in product(range(size), repeat=4)
    }

def left_check(sol: SetSolution, matrix: AuxMatrix) -> AuxMatrix:
    """ř_12 M: row (p, q) picks row ř(p, q)."""
    return {(row, col): matrix[(sol.apply(*row), col)] for row, col in matrix}

def right_check(sol: SetSolution, matrix: AuxMatrix) -> AuxMatrix:
    """M ř_12 for involutive ř: column c picks column ř(c)."""
    return {(row, col): matrix[(row, sol.apply(*col))] for row, col in matrix}

def combine(*weighted: Tuple[int, AuxMatrix]) -> AuxMatrix:
    out: Dict = defaultdict(lambda: defaultdict(int))
    for weight, matrix in weighted:
        for key, expression in matrix.items():
            for word, coef in expression.items():
                out[key][word] += weight * coef
    keys = set().union(*(matrix.keys() for _, matrix in weighted))
    return {key: {w: c for w, c in out[key].items() if c} for key in keys}

def _expression_key(expression: Expression) -> Normalized:
    return sign_normalize(tuple(sorted(expression.items())))

def gl_relations(size: int) -> set:
    """[𝔏_ij, 𝔏_kl] − 𝔏_kj δ_il + 𝔏_il δ_kj as sign-normalized nonzero expressions."""
    found = set()
    for i, j, k, l in product(range(size), repeat=4):
        a, b = QAGenerator(i, j, 1), QAGenerator(k, l, 1)
        expression: Expression = defaultdict(int)
        expression[(a, b)] += 1
        expression[(b, a)] -= 1
        if i == l:
            expression[(QAGenerator(k, j, 1),)] -= 1
        if k == j:
            expression[(QAGenerator(i, l, 1),)] += 1
        expression = {w: c for w, c in expression.items() if c}
        if expression:
            found.add(_expression_key(expression))
    return found

def _is_flip(sol: SetSolution) -> bool:
    return all(sol.apply(x, y) == (y, x) for x, y in product(range(sol.size), repeat=2))

class QAlgebraService:
    """Relation generation and checks truncated at one level."""

    def __init__(self, max_level: Optional[int] = None):
        self.max_level = settings.MAX_LEVEL if max_level is None else max_level
        if self.max_level < 0:
            raise PreconditionError(f"max level must be non-negative, got {self.max_level}")

    def _levels(self) -> List[Tuple[int, int]]:
        return list(product(range(self.max_level + 1), repeat=2))

    def generate_relations(self, sol: SetSolution) -> List[QARelation]:
        require_valid(sol)
        relations = [
            make_relation(sol, x, j, y, i, n, m)
            for x, j, y, i in product(range(sol.size), repeat=4)
            for n, m in self._levels()
        ]
        logger.info(f"Generated {len(relations)} relations for {sol.name or '<unnamed>'} up to level {self.max_level}")
        return relations

    def yangian_form(self, size: int) -> Tuple[List[QARelation], RelationComparison]:
        """The Yangian relations directly, compared with those generated from trivial(size)."""
        relations = [
            yangian_relation(x, j, y, i, n, m)
            for x, j, y, i in product(range(size), repeat=4)
            for n, m in self._levels()
        ]
        comparison = compare_relation_families(relations, self.generate_relations(trivial(size)))
        return relations, comparison

    def check_representation(
        self,
        sol: SetSolution,
        relations: Sequence[QARelation],
        kind: RepKind,
        use_structure_nf: bool = True,
    ) -> RepReport:
        """Substitute each generator into A_(X,ř) and reduce every relation image."""
        if use_structure_nf:
            nf = {(x, y): tuple(structure_nf(sol, x, y)) for x, y in product(range(sol.size), repeat=2)}
        else:
            nf = {(x, y): (x, y) for x, y in product(range(sol.size), repeat=2)}

        def image(term: Term) -> Optional[Hashable]:
            a, b = term.left, term.right
            if kind == "linearPoly" and (a.level >= 2 or b.level >= 2):
                return None
            word = nf[(a.z, b.z)]
            if kind == "constant":
                return word
            if kind == "tensor":
                return word, nf[(a.w, b.w)]
            return word, tuple(sorted((a.level, b.level)))

        failures: List[RepFailure] = []
        count = 0
        for rel in relations:
            residue: Dict[Hashable, int] = defaultdict(int)
            for term in rel.terms:
                key = image(term)
                if key is not None:
                    residue[key] += term.coef
            nonzero = sorted((key, c) for key, c in residue.items() if c)
            if nonzero:
                count += 1
                if len(failures) < MAX_REPORTED_FAILURES:
                    rendered = " + ".join(f"{c}·{key}" for key, c in nonzero)
                    failures.append(RepFailure(tag=list(rel.tag), residue=rendered))
        if count:
            logger.info(f"{kind} representation: {count} nonzero relation images")
        return RepReport(
            kind=kind,
            structure_nf=use_structure_nf,
            relations_checked=len(relations),
            failure_count=count,
            failures=failures,
        )

    def induce_hom(self, hom: SolutionHom) -> InduceReport:
        """Push every defining relation of the domain through f and match the codomain's."""
        result = check_hom(hom.mapping, hom.domain, hom.codomain)
        if not result.valid:
            raise PreconditionError(f"f is not a homomorphism: {result.witness}")
        target = {rel.tag: normalize(rel.terms) for rel in self.generate_relations(hom.codomain)}
        domain_relations = self.generate_relations(hom.domain)
        failed = []
        for rel in domain_relations:
            image = map_relation(rel, hom.mapping)
            if normalize(image.terms) != target[image.tag]:
                failed.append(list(rel.tag))
        return InduceReport(
            domain=hom.domain.name,
            codomain=hom.codomain.name,
            mapping=list(hom.mapping),
            relations_mapped=len(domain_relations),
            failed_tags=failed,
        )

    def induce_orbit_quotient(self, sol: SetSolution) -> Tuple[InduceReport, RelationComparison]:
        """The Yangian of the orbit set as a representation of 𝔄(X, ř)."""
        hom = orbit_quotient(sol)
        report = self.induce_hom(hom)
        yangian, _ = self.yangian_form(hom.codomain.size)
        return report, compare_relation_families(yangian, self.generate_relations(hom.codomain))

    def induce_ideal_quotient(self, brace: FiniteBrace, subset: Optional[Iterable[int]], ideal: BraceIdeal) -> InduceReport:
        return self.induce_hom(quotient_by_ideal(brace, subset, ideal))

    def level01_checks(self, sol: SetSolution) -> Level01Report:
        """ř L1^(0) L2^(m) = L1^(m) L2^(0) ř and the gl relations of L^(1), with L^(0) = I."""
        require_valid(sol)
        d = sol.size
        flip = _is_flip(sol)

        # 1. Level-0 exchange for m = 1..max level
        residues = 0
        for m in range(1, self.max_level + 1):
            difference = combine(
                (1, left_check(sol, aux_product(d, 0, m))),
                (-1, right_check(sol, aux_product(d, m, 0))),
            )
            residues += sum(1 for expression in difference.values() if expression)
        exchange_anchor = "ř12 L1^(0) L2^(m) = L1^(m) L2^(0) ř12, L^(0) = I"
        if flip:
            exchange = CheckResult(check="level0_exchange", anchor=exchange_anchor, passed=residues == 0, detail=f"{residues} nonzero entries")
        else:
            exchange = CheckResult.skip("level0_exchange", exchange_anchor, f"ř is not 𝒫; {residues} nonzero entries recorded")

        # 2. Level-1 exchange at m = 1
        products = aux_product(d, 1, 1)
        level1 = combine(
            (1, left_check(sol, products)),
            (-1, right_check(sol, products)),
            (-1, aux_product(d, 1, 0)),
            (1, aux_product(d, 0, 1)),
        )
        extracted = {_expression_key(expression) for expression in level1.values() if expression}
        rendered = sorted(render_expression(dict(key)) for key in extracted)
        gl_anchor = "[𝔏_ij, 𝔏_kl] = 𝔏_kj δ_il − 𝔏_il δ_kj"
        if flip:
            expected = gl_relations(d)
            witness = None
            if extracted != expected:
                stray = sorted(extracted ^ expected)[0]
                witness = Witness(lhs=render_expression(dict(stray)), note="relation in only one family")
            gl = CheckResult(
                check="gl",
                anchor=gl_anchor,
                passed=extracted == expected,
                witness=witness,
                detail=f"{len(extracted)} extracted, {len(expected)} expected",
            )
        else:
            gl = CheckResult.skip("gl", gl_anchor, f"ř is not 𝒫; {len(extracted)} level-1 relations recorded")

        # 3. Concrete realization L(λ) = λI + 𝒫 on one site
        rtt = verify_rtt(sol, 1)
        return Level01Report(exchange=exchange, gl=gl, rtt=rtt, exchange_residues=residues, level1_relations=rendered)
