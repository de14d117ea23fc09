"""
Ring and brace commands: axiom validation, ring-to-brace, ideal quotients and
central involutive elements.
"""
import argparse

from brace.schemas import BraceIdeal
from brace.services import (
    central_involutive_elements,
    quotient_brace,
    ring_to_brace,
    validate_brace,
    validate_ideal,
    validate_ring,
)
from core.router import CommandRouter, arg, brace_arg, dump
from core.schemas import CommandResult
from suite.corpus import parse_brace, parse_int_list, parse_ring

ring_router = CommandRouter()
router = CommandRouter()

RING_HELP = "scaled:M,C | truncated:P,D | file:PATH"

@ring_router.command("validate", "Check ring axioms and compute the nilpotency index", arg("--ring", required=True, help=RING_HELP))
def validate_ring_command(args: argparse.Namespace) -> CommandResult:
    ring = parse_ring(args.ring)
    report = validate_ring(ring)
    return CommandResult(
        checks=report.checks(),
        data={"size": ring.size, "nilpotency_index": report.nilpotency_index},
    )

@ring_router.command("to-brace", "Build the brace a∘b = ab+a+b of a nilpotent ring", arg("--ring", required=True, help=RING_HELP))
def ring_to_brace_command(args: argparse.Namespace) -> CommandResult:
    brace = ring_to_brace(parse_ring(args.ring))
    return CommandResult(checks=validate_brace(brace).checks(), data={"brace": dump(brace)})

@router.command("validate", "Check the brace axioms exhaustively", brace_arg())
def validate_brace_command(args: argparse.Namespace) -> CommandResult:
    brace = parse_brace(args.brace)
    return CommandResult(checks=validate_brace(brace).checks(), data={"size": brace.size})

@router.command(
    "quotient",
    "Quotient brace B/J by an ideal",
    brace_arg(),
    arg("--ideal", required=True, help="comma-separated elements of J"),
)
def quotient_command(args: argparse.Namespace) -> CommandResult:
    brace = parse_brace(args.brace)
    ideal = BraceIdeal(elements=parse_int_list(args.ideal))
    report = validate_ideal(brace, ideal)
    quotient, cosets = quotient_brace(brace, ideal)
    return CommandResult(
        checks=report.checks(),
        data={"quotient": dump(quotient), "cosets": dump(cosets)},
    )

@router.command("central", "List central elements a with a+a = 0 and a∘a = 0", brace_arg())
def central_command(args: argparse.Namespace) -> CommandResult:
    brace = parse_brace(args.brace)
    return CommandResult(data={"central_involutive": central_involutive_elements(brace)})
