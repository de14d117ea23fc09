"""
Chain commands: transfer matrices, charges, RTT and the shift identities.
"""
import argparse

from chain.services import (
    build_chain,
    ensure_budget,
    summarize,
    verify_closed_forms,
    verify_commuting,
    verify_rtt,
    verify_shift,
    verify_shift_action,
    verify_trace_consistency,
)
from core.router import CommandRouter, arg, dump, sites_arg, solution_arg
from core.schemas import CommandResult
from rmatrix.services import build
from suite.corpus import parse_solution

router = CommandRouter()

@router.command(
    "build",
    "Build the periodic transfer matrix and its charges t^(k)",
    solution_arg(),
    sites_arg(),
    arg("--verify-commute", action="store_true", help="check [t^(k), t^(l)] = 0 for all pairs"),
    arg("--closed-forms", action="store_true", help="rebuild t^(N), H^(N−1), H^(N−2), H^(1) and t^(0)"),
)
def build_command(args: argparse.Namespace) -> CommandResult:
    chain = build_chain(parse_solution(args.solution), args.sites, args.budget)
    checks = [verify_trace_consistency(chain), *verify_shift(chain)]
    pairs = 0
    if args.verify_commute:
        commuting, pairs = verify_commuting(chain)
        checks.append(commuting)
    forms = None
    if args.closed_forms:
        forms = verify_closed_forms(chain)
        checks.extend(forms.checks())
    return CommandResult(checks=checks, data={"chain": dump(summarize(chain, pairs, forms))})

@router.command(
    "verify-rtt",
    "Ř12 T1 T2 = T1 T2 Ř12 with shifted parameters on the grid",
    solution_arg(),
    sites_arg(),
    arg("--bound", type=int, default=None, help="grid bound (default: N + 1)"),
)
def verify_rtt_command(args: argparse.Namespace) -> CommandResult:
    return CommandResult(checks=[verify_rtt(parse_solution(args.solution), args.sites, args.budget, args.bound)])

@router.command("closed-forms", "Independent rebuilds of t^(N), H^(N−1), H^(N−2), H^(1) and t^(0)", solution_arg(), sites_arg())
def closed_forms_command(args: argparse.Namespace) -> CommandResult:
    chain = build_chain(parse_solution(args.solution), args.sites, args.budget)
    return CommandResult(checks=verify_closed_forms(chain).checks())

@router.command("shift-action", "ℜ_{N;1} moves ř_{n,n+1} one site", solution_arg(), sites_arg(default=4))
def shift_action_command(args: argparse.Namespace) -> CommandResult:
    sol = parse_solution(args.solution)
    ensure_budget(sol.size, args.sites, args.budget)
    return CommandResult(checks=verify_shift_action(build(sol), args.sites))
