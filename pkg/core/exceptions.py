"""
Custom exceptions for the workbench.

Every error carries the process exit code the CLI reports for it: 2 for input the
workbench cannot work with, 1 for a property that was checked and failed.
"""

class WorkbenchError(Exception):
    """Base custom exception class."""
    def __init__(self, detail: str, exit_code: int = 2):
        super().__init__(detail)
        self.detail = detail
        self.exit_code = exit_code

class MalformedInputError(WorkbenchError):
    """Tables, files or command-line specs with the wrong shape."""
    def __init__(self, detail: str = "Malformed input"):
        super().__init__(detail=detail, exit_code=2)

class DimensionMismatchError(WorkbenchError):
    """Operands with incompatible leg structure."""
    def __init__(self, detail: str = "Dimension mismatch"):
        super().__init__(detail=detail, exit_code=2)

class DuplicateLegError(WorkbenchError):
    """An operator embedded twice on the same leg."""
    def __init__(self, detail: str = "Duplicate leg positions"):
        super().__init__(detail=detail, exit_code=2)

class LegIndexError(WorkbenchError):
    """Leg index outside the operator."""
    def __init__(self, detail: str = "Leg index out of range"):
        super().__init__(detail=detail, exit_code=2)

class PreconditionError(WorkbenchError):
    """A named precondition of an operation does not hold."""
    def __init__(self, detail: str = "Precondition failed"):
        super().__init__(detail=detail, exit_code=2)

class BudgetExceededError(WorkbenchError):
    """Requested tensor space exceeds the configured basis budget."""
    def __init__(self, detail: str = "Basis budget exceeded"):
        super().__init__(detail=detail, exit_code=2)

class NotNilpotentError(WorkbenchError):
    """Ring has no nilpotency index, so a∘b = ab+a+b need not be a group."""
    def __init__(self, detail: str = "Ring is not nilpotent"):
        super().__init__(detail=detail, exit_code=2)

class InvalidSolutionError(WorkbenchError):
    """Solution tables fail non-degeneracy, involutivity or the braid relation."""
    def __init__(self, detail: str = "Invalid set-theoretic solution"):
        super().__init__(detail=detail, exit_code=2)

class ClosureError(WorkbenchError):
    """Subset of a brace is not closed under ř."""
    def __init__(self, detail: str = "Subset is not closed under the solution map"):
        super().__init__(detail=detail, exit_code=2)

class IdealError(WorkbenchError):
    """Subset of a brace is not an ideal."""
    def __init__(self, detail: str = "Subset is not a brace ideal"):
        super().__init__(detail=detail, exit_code=2)

class NotAutomorphismError(WorkbenchError):
    """Index table is not a bijective self-homomorphism of the solution."""
    def __init__(self, detail: str = "Map is not an automorphism of the solution"):
        super().__init__(detail=detail, exit_code=2)

class CocycleError(WorkbenchError):
    """Weights violate α_x α_y = α_{σ_x(y)} α_{τ_y(x)}."""
    def __init__(self, detail: str = "Cocycle condition fails"):
        super().__init__(detail=detail, exit_code=2)

class RetractionError(WorkbenchError):
    """Induced maps on retraction classes are not well defined."""
    def __init__(self, detail: str = "Retraction is not well defined"):
        super().__init__(detail=detail, exit_code=1)
