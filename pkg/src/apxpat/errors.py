"""Exception types shared across the package."""


class ApxpatError(Exception):
    """Base class for all package-specific errors."""


class DimensionMismatch(ApxpatError, ValueError):
    """Operands carry incompatible dimensions."""


class InsufficientSeparation(ApxpatError):
    """Input set violates the declared minimum pairwise distance."""


class InfeasibleGeneration(ApxpatError):
    """Requested point count cannot be packed (or the attempt budget ran out)."""


class ResolutionOverflow(ApxpatError):
    """Pattern reduction would need a finer grid than the configured cap."""


class DegenerateFrame(ApxpatError):
    """No rotation attempt produced pairwise-distinct x-coordinates."""


class BudgetExceeded(ApxpatError):
    """Brute-force enumeration or clique search would exceed its hard cap."""


class InternalError(ApxpatError, RuntimeError):
    """A certificate that is guaranteed by construction failed to verify."""


class ParseError(ApxpatError, ValueError):
    """Malformed point-set file."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
