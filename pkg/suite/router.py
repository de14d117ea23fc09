"""
The acceptance command.
"""
import argparse

from core.router import CommandRouter, arg, max_level_arg
from suite.corpus import load_corpus
from suite.services import SuiteService
from core.schemas import CommandResult

router = CommandRouter()

@router.command(
    "verify-all",
    "Run every verification family over a corpus",
    arg("--corpus", action="append", default=None, help="corpus source; repeatable (default: the built-in corpus)"),
    arg("--max-sites", type=int, default=4, help="largest chain length N checked (default 4)"),
    max_level_arg(),
    arg("--no-mutation", action="store_true", help="skip the mutation-robustness harness"),
)
def verify_all_command(args: argparse.Namespace) -> CommandResult:
    corpus = load_corpus(args.corpus)
    service = SuiteService(args.max_sites, args.max_level, args.budget)
    return service.verify_all(corpus, mutations=not args.no_mutation)
