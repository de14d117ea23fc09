"""
Command routers for the `ybl` command line.

A domain package declares its commands on a CommandRouter and main.py mounts
the router under the package's group name, the way a web app includes API routers
under a prefix.
"""
import argparse
from typing import Any, Callable, Dict, List, NamedTuple, Optional, Tuple

from core.schemas import CommandResult

Handler = Callable[[argparse.Namespace], CommandResult]

class Argument(NamedTuple):
    flags: Tuple[str, ...]
    options: Dict[str, Any]

def arg(*flags: str, **options: Any) -> Argument:
    return Argument(flags=flags, options=options)

class Command(NamedTuple):
    name: str
    help: str
    arguments: Tuple[Argument, ...]
    handler: Handler

class CommandRouter:
    """Collects decorated command handlers with their arguments."""

    def __init__(self):
        self.commands: List[Command] = []

    def command(self, name: str, help: str, *arguments: Argument) -> Callable[[Handler], Handler]:
        def decorator(handler: Handler) -> Handler:
            self.commands.append(Command(name=name, help=help, arguments=arguments, handler=handler))
            return handler
        return decorator

    def mount(self, subparsers: argparse._SubParsersAction, common: argparse.ArgumentParser) -> None:
        for command in self.commands:
            parser = subparsers.add_parser(command.name, help=command.help, parents=[common])
            for argument in command.arguments:
                parser.add_argument(*argument.flags, **argument.options)
            parser.set_defaults(handler=command.handler)

# Shared arguments

def solution_arg(flag: str = "--solution", required: bool = True) -> Argument:
    return arg(
        flag,
        required=required,
        help="trivial:N | lyubashenko:M | scaled:M,C | truncated:P,D | file:PATH",
    )

def brace_arg(required: bool = True) -> Argument:
    return arg("--brace", required=required, help="scaled:M,C | truncated:P,D | trivial:N | file:PATH")

def sites_arg(default: Optional[int] = None) -> Argument:
    if default is None:
        return arg("--sites", type=int, required=True, help="number of chain sites N")
    return arg("--sites", type=int, default=default, help=f"number of chain sites N (default {default})")

def max_level_arg() -> Argument:
    return arg("--max-level", type=int, default=None, help="level truncation (default: YBL_MAX_LEVEL)")

def dump(model: Any) -> Any:
    """JSON-ready form of a pydantic model (or a list of them)."""
    if isinstance(model, list):
        return [dump(item) for item in model]
    return model.model_dump(mode="json", by_alias=True)
