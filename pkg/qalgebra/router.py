"""
Quantum-algebra commands.
"""
import argparse

from brace.schemas import BraceIdeal
from core.exceptions import MalformedInputError
from core.router import CommandRouter, arg, brace_arg, dump, max_level_arg, solution_arg
from core.schemas import CommandResult
from qalgebra.services import QAlgebraService, export_relations
from solution.schemas import SolutionHom
from suite.corpus import parse_brace, parse_int_list, parse_solution

router = CommandRouter()

KINDS = ("constant", "tensor", "graded", "linearPoly")

@router.command("relations", "Defining relations Q − P of 𝔄(X, ř)", solution_arg(), max_level_arg())
def relations_command(args: argparse.Namespace) -> CommandResult:
    relations = QAlgebraService(args.max_level).generate_relations(parse_solution(args.solution))
    return CommandResult(data={"count": len(relations), "relations": export_relations(relations)})

@router.command("yangian", "Yangian relations compared with those of the trivial solution", arg("--n", type=int, required=True), max_level_arg())
def yangian_command(args: argparse.Namespace) -> CommandResult:
    relations, comparison = QAlgebraService(args.max_level).yangian_form(args.n)
    check = comparison.to_check("yangian_match", "Q − P equals the Yangian relations up to sign")
    return CommandResult(checks=[check], data={"count": len(relations), "comparison": dump(comparison)})

@router.command(
    "check-rep",
    "Reduce every relation inside a structure-algebra representation",
    solution_arg(),
    max_level_arg(),
    arg("--kind", choices=[*KINDS, "all"], default="all"),
    arg("--no-structure-nf", action="store_true", help="drop the relations xy = uv (ablation)"),
)
def check_representation_command(args: argparse.Namespace) -> CommandResult:
    sol = parse_solution(args.solution)
    service = QAlgebraService(args.max_level)
    relations = service.generate_relations(sol)
    kinds = KINDS if args.kind == "all" else (args.kind,)
    reports = [service.check_representation(sol, relations, kind, not args.no_structure_nf) for kind in kinds]
    return CommandResult(checks=[report.to_check() for report in reports], data={"reports": dump(reports)})

@router.command(
    "induce",
    "Push relations through a homomorphism (default: the orbit quotient)",
    solution_arg(required=False),
    solution_arg("--target", required=False),
    arg("--map", default=None, help="index table of a homomorphism into --target"),
    brace_arg(required=False),
    arg("--subset", default=None, help="with --brace: elements of X"),
    arg("--ideal", default=None, help="with --brace: elements of the ideal J"),
    max_level_arg(),
)
def induce_command(args: argparse.Namespace) -> CommandResult:
    service = QAlgebraService(args.max_level)
    if args.brace is not None:
        ideal = BraceIdeal(elements=parse_int_list(args.ideal or "0"))
        subset = parse_int_list(args.subset) if args.subset is not None else None
        report = service.induce_ideal_quotient(parse_brace(args.brace), subset, ideal)
        return CommandResult(checks=[report.to_check()], data={"induce": dump(report)})
    if args.solution is None:
        raise MalformedInputError("induce needs --solution or --brace")
    sol = parse_solution(args.solution)
    if args.target is not None:
        if args.map is None:
            raise MalformedInputError("--target needs --map")
        hom = SolutionHom(domain=sol, codomain=parse_solution(args.target), mapping=tuple(parse_int_list(args.map)))
        report = service.induce_hom(hom)
        return CommandResult(checks=[report.to_check()], data={"induce": dump(report)})
    report, yangian = service.induce_orbit_quotient(sol)
    checks = [report.to_check(), yangian.to_check("yangian_match", "codomain relations are Yangian relations")]
    return CommandResult(checks=checks, data={"induce": dump(report)})

@router.command("level01", "Level-0 exchange, gl relations of L^(1) and the one-site RTT", solution_arg(), max_level_arg())
def level01_command(args: argparse.Namespace) -> CommandResult:
    report = QAlgebraService(args.max_level).level01_checks(parse_solution(args.solution))
    return CommandResult(checks=report.checks(), data={"exchange_residues": report.exchange_residues, "level1_relations": report.level1_relations})
