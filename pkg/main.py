"""
`ybl` command line for the Yang-Baxter workbench.
Every command prints one JSON report; the exit status is 0 when all checks pass,
1 when a check fails and 2 for malformed input or a failed precondition.
"""
import argparse
import json
import logging
import sys
import time
from typing import List, Optional

from config import settings
from core.exceptions import WorkbenchError
from core.schemas import RunReport, Timing, all_passed
from brace.router import ring_router, router as brace_router
from solution.router import router as solution_router
from rmatrix.router import router as rmatrix_router
from chain.router import router as chain_router
from symmetry.router import router as symmetry_router
from qalgebra.router import router as qalgebra_router
from suite.router import router as suite_router

# Configure logging
logging.basicConfig(level=settings.LOG_LEVEL, stream=sys.stderr)
logger = logging.getLogger(__name__)

GROUPS = [
    ("ring", "Finite nilpotent rings", ring_router),
    ("brace", "Braces, ideals and central elements", brace_router),
    ("solution", "Set-theoretic solutions", solution_router),
    ("rmatrix", "R-matrices built from a solution", rmatrix_router),
    ("chain", "Periodic transfer matrices and charges", chain_router),
    ("symmetry", "Symmetries of the charges", symmetry_router),
    ("qalgebra", "Quantum algebra relations", qalgebra_router),
]

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=None, help="write the JSON report here instead of stdout")
    common.add_argument("--budget", type=int, default=None, help="basis budget (default: YBL_BASIS_BUDGET)")

    parser = argparse.ArgumentParser(prog="ybl", description="Exact-arithmetic Yang-Baxter workbench")
    groups = parser.add_subparsers(dest="group", required=True)
    for name, help, router in GROUPS:
        group = groups.add_parser(name, help=help)
        commands = group.add_subparsers(dest="command", required=True)
        router.mount(commands, common)
    suite_router.mount(groups, common)
    return parser

def _emit(payload: dict, out: Optional[str]) -> None:
    text = json.dumps(payload, indent=2, ensure_ascii=False)
    if out is None:
        print(text)
        return
    with open(out, "w", encoding="utf-8") as handle:
        handle.write(text + "\n")

def run(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    command = " ".join(part for part in (args.group, getattr(args, "command", None)) if part)
    inputs = {key: value for key, value in vars(args).items() if key not in ("handler", "group", "command", "out")}
    started = time.perf_counter()
    try:
        result = args.handler(args)
    except WorkbenchError as e:
        logger.error(f"{command}: {e.detail}")
        _emit({"command": command, "detail": e.detail, "exit_status": e.exit_code}, args.out)
        return e.exit_code
    checks = sorted(result.checks, key=lambda check: check.check)
    status = 0 if all_passed(checks) else 1
    report = RunReport(
        command=command,
        inputs=inputs,
        checks=checks,
        data=result.data,
        exit_status=status,
        timing=Timing(wall_time_s=round(time.perf_counter() - started, 3)),
    )
    for check in checks:
        if not check.passed:
            logger.warning(f"{check.check} failed: {check.witness or check.detail}")
    _emit(report.model_dump(mode="json", by_alias=True), args.out)
    return status

if __name__ == "__main__":
    sys.exit(run())
