"""
Named inputs for the command line: solution, brace and ring mini-syntax, and the
builtin corpus.

    trivial:N        trivial solution (or the trivial brace Z/N)
    lyubashenko:M    ř(x, y) = (y+1, x−1) mod M
    scaled:M,C       brace of the ring cZ/mZ
    truncated:P,D    brace of t·Z_p[t]/(t^d)
    file:PATH        JSON file; a bare path ending in .json works too
"""
import logging
from typing import Iterable, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict

from brace.schemas import FiniteBrace, FiniteRing
from brace.services import (
    load_brace_file,
    load_ring_file,
    ring_to_brace,
    scaled_mod_ring,
    trivial_brace,
    truncated_polynomial_ring,
)
from config import settings
from core.exceptions import MalformedInputError
from solution.schemas import SetSolution
from solution.services import from_brace, load_solution_file, lyubashenko, trivial

logger = logging.getLogger(__name__)

DEFAULT_SOURCES = [
    "trivial:2",
    "trivial:3",
    "trivial:4",
    "lyubashenko:2",
    "lyubashenko:3",
    "lyubashenko:4",
    "scaled:4,2",
    "truncated:2,3",
]

class CorpusEntry(BaseModel):
    """One validated solution, with the brace it came from when there is one."""
    model_config = ConfigDict(frozen=True)

    name: str
    solution: SetSolution
    brace: Optional[FiniteBrace] = None

class Corpus(BaseModel):
    name: str
    entries: List[CorpusEntry]

def _split(source: str) -> Tuple[str, str]:
    if ":" not in source:
        if source.endswith(".json"):
            return "file", source
        raise MalformedInputError(f"'{source}': expected name:params, e.g. trivial:3")
    kind, params = source.split(":", 1)
    return kind.strip().lower(), params.strip()

def _ints(source: str, params: str, count: int) -> List[int]:
    try:
        values = [int(part) for part in params.split(",")]
    except ValueError:
        raise MalformedInputError(f"'{source}': parameters must be integers")
    if len(values) != count:
        raise MalformedInputError(f"'{source}': expected {count} parameter(s), got {len(values)}")
    if any(v < 1 for v in values):
        raise MalformedInputError(f"'{source}': parameters must be positive")
    return values

def parse_int_list(text: str) -> List[int]:
    """'0,2,3' -> [0, 2, 3]; the empty string is the empty list."""
    if not text.strip():
        return []
    try:
        return [int(part) for part in text.split(",")]
    except ValueError:
        raise MalformedInputError(f"'{text}': expected comma-separated integers")

def parse_ring(source: str) -> FiniteRing:
    kind, params = _split(source)
    if kind == "scaled":
        return scaled_mod_ring(*_ints(source, params, 2))
    if kind == "truncated":
        return truncated_polynomial_ring(*_ints(source, params, 2))
    if kind == "file":
        return load_ring_file(params)
    raise MalformedInputError(f"'{source}': unknown ring kind '{kind}'")

def parse_brace(source: str) -> FiniteBrace:
    kind, params = _split(source)
    if kind in ("scaled", "truncated"):
        return ring_to_brace(parse_ring(source))
    if kind == "trivial":
        return trivial_brace(*_ints(source, params, 1))
    if kind == "file":
        return load_brace_file(params)
    raise MalformedInputError(f"'{source}': unknown brace kind '{kind}'")

def parse_entry(source: str, validate: bool = True) -> CorpusEntry:
    """validate=False only skips the solution axioms; shapes are always checked."""
    kind, params = _split(source)
    if kind == "trivial":
        return CorpusEntry(name=source, solution=trivial(*_ints(source, params, 1)))
    if kind == "lyubashenko":
        return CorpusEntry(name=source, solution=lyubashenko(*_ints(source, params, 1)))
    if kind in ("scaled", "truncated"):
        brace = parse_brace(source)
        return CorpusEntry(name=source, solution=from_brace(brace, name=source), brace=brace)
    if kind == "file":
        return CorpusEntry(name=source, solution=load_solution_file(params, validate))
    raise MalformedInputError(f"'{source}': unknown solution kind '{kind}'")

def parse_solution(source: str, validate: bool = True) -> SetSolution:
    return parse_entry(source, validate).solution

def load_corpus(sources: Optional[Iterable[str]] = None) -> Corpus:
    """'default' expands to the builtin corpus plus CORPUS_FILES; entries sorted by name."""
    requested = list(sources) if sources else ["default"]
    expanded: List[str] = []
    for source in requested:
        if source == "default":
            expanded.extend(DEFAULT_SOURCES)
            expanded.extend(f"file:{path}" for path in settings.CORPUS_FILES)
        else:
            expanded.append(source)
    entries = [parse_entry(source) for source in dict.fromkeys(expanded)]
    logger.info(f"Loaded {len(entries)} corpus entries")
    name = "default" if requested == ["default"] else "custom"
    return Corpus(name=name, entries=sorted(entries, key=lambda entry: entry.name))
