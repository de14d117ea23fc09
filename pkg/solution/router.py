"""
Solution commands: construction, validation, orbits, retraction and homomorphisms.
"""
import argparse

from core.exceptions import MalformedInputError
from core.router import CommandRouter, arg, brace_arg, solution_arg
from core.schemas import CheckResult, CommandResult
from solution.schemas import SetSolution
from solution.services import (
    check_hom,
    find_iso,
    fixed_elements,
    from_brace,
    is_indecomposable,
    lyubashenko,
    multipermutation_level,
    orbits,
    retract,
    retract_to_lyubashenko,
    solution_to_json,
    square_free_elements,
    trivial,
    validate_solution,
)
from suite.corpus import parse_brace, parse_int_list, parse_solution

router = CommandRouter()

def _describe(sol: SetSolution, validate: bool) -> CommandResult:
    checks = validate_solution(sol).checks() if validate else []
    return CommandResult(checks=checks, data={"solution": solution_to_json(sol)})

@router.command("validate", "Check non-degeneracy, involutivity and the braid relation", solution_arg())
def validate_command(args: argparse.Namespace) -> CommandResult:
    sol = parse_solution(args.solution, validate=False)
    report = validate_solution(sol)
    data = {"size": sol.size}
    if report.ok:
        data.update(fixed_elements=fixed_elements(sol), square_free_elements=square_free_elements(sol))
    return CommandResult(checks=report.checks(), data=data)

@router.command(
    "from-brace",
    "Solution σ_x(y) = x∘y − x on a subset of a brace",
    brace_arg(),
    arg("--subset", default=None, help="comma-separated elements (default: the whole brace)"),
    arg("--validate", action="store_true"),
)
def from_brace_command(args: argparse.Namespace) -> CommandResult:
    subset = parse_int_list(args.subset) if args.subset is not None else None
    sol = from_brace(parse_brace(args.brace), subset, name=args.brace)
    result = _describe(sol, args.validate)
    result.data["labels"] = list(sol.labels)
    return result

@router.command("lyubashenko", "ř(x, y) = (y+1, x−1) mod m", arg("--m", type=int, required=True), arg("--validate", action="store_true"))
def lyubashenko_command(args: argparse.Namespace) -> CommandResult:
    if args.m < 1:
        raise MalformedInputError(f"--m must be positive, got {args.m}")
    return _describe(lyubashenko(args.m), args.validate)

@router.command("trivial", "ř(x, y) = (y, x)", arg("--n", type=int, required=True), arg("--validate", action="store_true"))
def trivial_command(args: argparse.Namespace) -> CommandResult:
    if args.n < 1:
        raise MalformedInputError(f"--n must be positive, got {args.n}")
    return _describe(trivial(args.n), args.validate)

@router.command("orbits", "Orbits under all σ_x and τ_y", solution_arg())
def orbits_command(args: argparse.Namespace) -> CommandResult:
    sol = parse_solution(args.solution)
    return CommandResult(data={"orbits": orbits(sol), "indecomposable": is_indecomposable(sol)})

@router.command(
    "retract",
    "Retraction by equal σ-rows, or a retraction chain onto a Lyubashenko solution",
    solution_arg(),
    arg("--to-lyubashenko", action="store_true"),
)
def retract_command(args: argparse.Namespace) -> CommandResult:
    sol = parse_solution(args.solution)
    if args.to_lyubashenko:
        found = retract_to_lyubashenko(sol)
        return CommandResult(
            data={
                "m": found.m,
                "stage_sizes": found.stage_sizes,
                "maps": [list(hom.mapping) for hom in found.chain],
            }
        )
    retraction, hom = retract(sol)
    return CommandResult(data={"retraction": solution_to_json(retraction), "classes": list(hom.mapping)})

@router.command("mp-level", "Multipermutation level (null when retraction stalls)", solution_arg())
def mp_level_command(args: argparse.Namespace) -> CommandResult:
    return CommandResult(data={"level": multipermutation_level(parse_solution(args.solution))})

@router.command(
    "hom",
    "Check that an index table is a surjective homomorphism",
    solution_arg(),
    solution_arg("--target"),
    arg("--map", required=True, help="comma-separated images f(0), f(1), …"),
)
def hom_command(args: argparse.Namespace) -> CommandResult:
    result = check_hom(parse_int_list(args.map), parse_solution(args.solution), parse_solution(args.target))
    check = CheckResult(
        check="hom",
        anchor="ř'(f(x), f(y)) = (f×f)(ř(x, y)), f onto",
        passed=result.valid,
        witness=result.witness,
    )
    return CommandResult(checks=[check])

@router.command("iso", "Search an isomorphism by backtracking", solution_arg(), solution_arg("--target"))
def iso_command(args: argparse.Namespace) -> CommandResult:
    found = find_iso(parse_solution(args.solution), parse_solution(args.target))
    return CommandResult(data={"isomorphic": found is not None, "mapping": list(found.mapping) if found else None})
