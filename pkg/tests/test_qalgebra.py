import pytest

from brace.schemas import BraceIdeal
from core.exceptions import PreconditionError
from qalgebra.schemas import QAGenerator, QARelation, Term
from qalgebra.services import (
    QAlgebraService,
    compare_relation_families,
    export_relations,
    gl_relations,
    make_relation,
    map_relation,
    normalize,
    structure_nf,
    yangian_relation,
)
from solution.schemas import SolutionHom
from solution.services import compose_hom, find_hom, lyubashenko, retract, trivial

KINDS = ["constant", "tensor", "graded", "linearPoly"]

@pytest.fixture
def service():
    return QAlgebraService(max_level=1)

def test_relation_count_and_shape(service):
    relations = service.generate_relations(trivial(2))
    assert len(relations) == 2 ** 4 * 2 ** 2
    rel = make_relation(lyubashenko(2), 0, 1, 1, 0, 0, 1)
    assert rel.tag == (0, 1, 1, 0, 0, 1)
    assert [term.coef for term in rel.terms] == [1, -1, 1, -1, 1, -1]
    # (s, t) = ř(0, 1) = (0, 1)
    assert rel.terms[0].left == QAGenerator(0, 1, 1)

def test_trivial_solution_gives_the_yangian(service):
    relations, comparison = service.yangian_form(2)
    assert comparison.matched
    assert comparison.expected_count == len(relations)

def test_sign_flip_is_pinpointed(service):
    relations, _ = service.yangian_form(2)
    tag = (0, 1, 1, 0, 0, 1)
    flipped = []
    for rel in relations:
        if rel.tag == tag:
            first, *rest = rel.terms
            rel = QARelation(tag=rel.tag, terms=(Term(-first.coef, first.left, first.right), *rest))
        flipped.append(rel)
    comparison = compare_relation_families(relations, flipped)
    assert comparison.mismatched_tags == [list(tag)]
    check = comparison.to_check("yangian_match", "anchor")
    assert not check.passed
    assert check.witness.elements == list(tag)

def test_overall_sign_is_ignored():
    rel = yangian_relation(0, 1, 1, 0, 0, 1)
    negated = QARelation(tag=rel.tag, terms=tuple(Term(-t.coef, t.left, t.right) for t in rel.terms))
    assert compare_relation_families([rel], [negated]).matched

def test_normalize_collects_equal_products():
    g = QAGenerator(0, 0, 1)
    assert normalize([Term(1, g, g), Term(-1, g, g)]) == ()

def test_structure_normal_form():
    sol = lyubashenko(2)
    assert structure_nf(sol, 0, 0) == structure_nf(sol, 1, 1)
    assert tuple(structure_nf(sol, 1, 1)) == (0, 0)

@pytest.mark.parametrize("name,sol", [("trivial2", trivial(2)), ("lyubashenko2", lyubashenko(2)), ("lyubashenko3", lyubashenko(3))])
def test_representations_kill_every_relation(service, name, sol):
    relations = service.generate_relations(sol)
    for kind in KINDS:
        report = service.check_representation(sol, relations, kind)
        assert report.failure_count == 0, f"{name} {kind}: {report.failures[:1]}"

def test_graded_ablation_leaves_residues(service):
    sol = lyubashenko(2)
    report = service.check_representation(sol, service.generate_relations(sol), "graded", use_structure_nf=False)
    assert report.failure_count > 0
    assert report.failures
    check = report.to_check()
    assert check.check == "rep_graded_ablated" and not check.passed

def test_induced_maps(service, scaled_brace, scaled_solution):
    sol = lyubashenko(2)
    identity = SolutionHom(domain=sol, codomain=sol, mapping=(0, 1))
    assert service.induce_hom(identity).failed_tags == []

    report, yangian = service.induce_orbit_quotient(scaled_solution)
    assert report.failed_tags == []
    assert yangian.matched

    report = service.induce_ideal_quotient(scaled_brace, None, BraceIdeal(elements=(0, 2)))
    assert report.to_check().passed

def test_induce_rejects_non_homomorphism(service):
    bad = SolutionHom(domain=lyubashenko(2), codomain=trivial(2), mapping=(0, 1))
    with pytest.raises(PreconditionError):
        service.induce_hom(bad)

def test_induced_maps_respect_composition(service, parity4):
    retraction, first = retract(parity4)
    second = find_hom(retraction, lyubashenko(2))
    assert second is not None
    composed = compose_hom(first, second)

    for hom in (first, second, composed):
        report = service.induce_hom(hom)
        assert report.failed_tags == [], (hom.domain.name, hom.codomain.name)

    target = {rel.tag: normalize(rel.terms) for rel in service.generate_relations(lyubashenko(2))}
    for rel in service.generate_relations(parity4):
        direct = map_relation(rel, composed.mapping)
        stepwise = map_relation(map_relation(rel, first.mapping), second.mapping)
        assert direct == stepwise
        assert normalize(direct.terms) == target[direct.tag]

def test_map_relation_renames_indices():
    rel = make_relation(trivial(2), 0, 1, 1, 0, 0, 0)
    image = map_relation(rel, [1, 0])
    assert image.tag == (1, 0, 0, 1, 0, 0)
    assert image.terms[0].left.level == rel.terms[0].left.level

def test_level01_on_trivial(service):
    report = service.level01_checks(trivial(2))
    assert [check.check for check in report.checks()] == ["level0_exchange", "gl", "rtt"]
    assert all(check.passed and not check.skipped for check in report.checks())
    assert report.exchange_residues == 0
    assert len(report.level1_relations) == len(gl_relations(2))

def test_level01_on_lyubashenko_records_data(service):
    report = service.level01_checks(lyubashenko(2))
    assert report.exchange.skipped and report.gl.skipped
    assert report.exchange_residues > 0
    assert report.rtt.passed

def test_export_is_sorted(service):
    exported = export_relations(reversed(service.generate_relations(trivial(2))))
    tags = [entry["tag"] for entry in exported]
    assert tags == sorted(tags)
    assert set(exported[0]["terms"][0]) == {"coef", "left", "right"}

def test_negative_level_rejected():
    with pytest.raises(PreconditionError):
        QAlgebraService(max_level=-1)
