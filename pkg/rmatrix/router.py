"""
R-matrix commands.
"""
import argparse

from core.router import CommandRouter, arg, sites_arg, solution_arg
from core.schemas import CommandResult
from exact.legmatrix import index_table
from rmatrix.services import build, verify_bundle_invariants, verify_dual_forms, verify_hecke, verify_spectral
from suite.corpus import parse_solution

router = CommandRouter()

@router.command("build", "Build ř, r, Ř(λ) and R(λ) and check their constant identities", solution_arg())
def build_command(args: argparse.Namespace) -> CommandResult:
    bundle = build(parse_solution(args.solution))
    checks = [verify_dual_forms(bundle), *verify_bundle_invariants(bundle)]
    data = {
        "leg_dim": bundle.leg_dim,
        "check_permutation": index_table(bundle.check_const),
        "r_permutation": index_table(bundle.r_const),
    }
    return CommandResult(checks=checks, data=data)

@router.command(
    "check",
    "Yang-Baxter, unitarity, crossing and Hecke identities",
    solution_arg(),
    sites_arg(default=3),
    arg("--bound", type=int, default=None, help="grid bound for two-parameter identities (default: YBL_GRID_BOUND)"),
)
def check_command(args: argparse.Namespace) -> CommandResult:
    bundle = build(parse_solution(args.solution))
    checks = verify_spectral(bundle, args.bound).checks()
    checks.extend(verify_hecke(bundle, args.sites))
    return CommandResult(checks=checks)
