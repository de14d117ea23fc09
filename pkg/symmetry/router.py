"""
Symmetry commands: B⊗B lifts, cocycle weights, diagonal M-symmetries, orbit
projectors, gl from fixed elements, square-free and central-element symmetries.
"""
import argparse
import json
from fractions import Fraction
from typing import List, Optional

from chain.schemas import ChainSystem
from chain.services import build_chain
from core.exceptions import MalformedInputError
from core.router import CommandRouter, arg, brace_arg, dump, sites_arg, solution_arg
from core.schemas import CommandResult
from exact.legmatrix import LegMatrix
from solution.schemas import SetSolution
from suite.corpus import parse_brace, parse_int_list, parse_solution
from symmetry.schemas import DiagonalSymmetry, SymmetryReport
from symmetry.services import SymmetryService, central_symmetry, solve_cocycle

router = CommandRouter()

MAP_HELP = "automorphism as comma-separated images (default: identity)"

def _chain(args: argparse.Namespace) -> ChainSystem:
    return build_chain(parse_solution(args.solution), args.sites, args.budget)

def _map(text: Optional[str], sol: SetSolution) -> List[int]:
    return list(range(sol.size)) if text is None else parse_int_list(text)

def _rationals(text: str) -> List[Fraction]:
    try:
        return [Fraction(part.strip()) for part in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise MalformedInputError(f"'{text}': expected comma-separated rationals such as 1,-2,3/4")

def parse_matrix(text: str, leg_dim: int) -> LegMatrix:
    """A one-leg constant matrix from a JSON list of rows; entries may be "p/q" strings."""
    try:
        rows = json.loads(text)
        entries = {(i, j): Fraction(str(value)) for i, row in enumerate(rows) for j, value in enumerate(row)}
    except (json.JSONDecodeError, TypeError, ValueError, ZeroDivisionError):
        raise MalformedInputError(f"'{text}': expected a JSON list of rows")
    if len(rows) != leg_dim or any(len(row) != leg_dim for row in rows):
        raise MalformedInputError(f"B must be {leg_dim}x{leg_dim}")
    return LegMatrix(1, leg_dim, entries)

def _report(report: SymmetryReport) -> CommandResult:
    return CommandResult(checks=report.checks(), data={"report": dump(report)})

@router.command(
    "lift",
    "(B⊗B)R = R(B⊗B), its monodromy lift and [B^⊗N, t^(k)]",
    solution_arg(),
    sites_arg(),
    arg("--matrix", required=True, help='B as JSON rows, e.g. "[[1,0],[0,1]]"'),
)
def lift_command(args: argparse.Namespace) -> CommandResult:
    chain = _chain(args)
    report = SymmetryService(chain).lift_check(parse_matrix(args.matrix, chain.leg_dim))
    return CommandResult(checks=report.checks(), data={"per_k": report.per_k})

@router.command("cocycle", "Weights with α_x α_y = α_{σ_x(y)} α_{τ_y(x)}", solution_arg(), arg("--map", default=None, help=MAP_HELP))
def cocycle_command(args: argparse.Namespace) -> CommandResult:
    sol = parse_solution(args.solution)
    return CommandResult(data={"cocycle": dump(solve_cocycle(sol, _map(args.map, sol)))})

@router.command(
    "m-sym",
    "[M^⊗N, t^(k)] = 0 for M = Σ α_x e_{x,f(x)}",
    solution_arg(),
    sites_arg(),
    arg("--map", default=None, help=MAP_HELP),
    arg("--alpha", required=True, help="comma-separated nonzero rationals"),
)
def m_symmetry_command(args: argparse.Namespace) -> CommandResult:
    chain = _chain(args)
    try:
        sym = DiagonalSymmetry(f=_map(args.map, chain.sol), alpha=_rationals(args.alpha))
    except ValueError as e:
        raise MalformedInputError(str(e))
    return _report(SymmetryService(chain).verify_m_symmetry(sym))

@router.command("orbit-proj", "Orbit-multidegree components of M^⊗N", solution_arg(), sites_arg())
def orbit_projector_command(args: argparse.Namespace) -> CommandResult:
    return _report(SymmetryService(_chain(args)).orbit_projector_symmetry())

@router.command("fixed-gl", "gl symmetry from elements with ř(x, y) = (y, x)", solution_arg(), sites_arg())
def fixed_gl_command(args: argparse.Namespace) -> CommandResult:
    return _report(SymmetryService(_chain(args)).fixed_element_gl())

@router.command("square-free", "e_{x_i,x_j}^⊗N for square-free points", solution_arg(), sites_arg())
def square_free_command(args: argparse.Namespace) -> CommandResult:
    return _report(SymmetryService(_chain(args)).square_free_symmetry())

@router.command("sweep", "Every automorphism with every instantiated character", solution_arg(), sites_arg())
def sweep_command(args: argparse.Namespace) -> CommandResult:
    return _report(SymmetryService(_chain(args)).character_sweep())

@router.command(
    "central",
    "e_{x,y}^⊗N with x = σ_b(a), y = σ_c(a) for central a",
    brace_arg(),
    arg("--subset", default=None, help="comma-separated elements of X (default: the whole brace)"),
    arg("--a", type=int, required=True),
    arg("--b", type=int, required=True),
    arg("--c", type=int, required=True),
    sites_arg(default=3),
)
def central_command(args: argparse.Namespace) -> CommandResult:
    subset = parse_int_list(args.subset) if args.subset is not None else None
    report = central_symmetry(parse_brace(args.brace), subset, args.a, args.b, args.c, args.sites, args.budget)
    return _report(report)
