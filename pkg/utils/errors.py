"""
Typed errors raised by the analyzer.

Three families map onto CLI exit codes:
- SpecSyntaxError  -> 2 (positioned parse error)
- InputError       -> 3 (semantic / validation failure of the input)
- BudgetExceeded   -> 4 (a configured resource cap was hit)
"""

from __future__ import annotations


class ModcoError(Exception):
    """Root of every error the analyzer raises on purpose."""

    exit_code: int = 1


# ---------------------------------------------------------------------------
# Parse errors
# ---------------------------------------------------------------------------

class SpecSyntaxError(ModcoError):
    """The input text does not match the document grammar."""

    exit_code = 2

    def __init__(self, message: str, line: int | None = None, column: int | None = None) -> None:
        self.line = line
        self.column = column
        where = f"{line}:{column}: " if line is not None else ""
        super().__init__(f"{where}{message}")


# ---------------------------------------------------------------------------
# Semantic / validation errors
# ---------------------------------------------------------------------------

class InputError(ModcoError):
    """The input is well-formed but mathematically unusable."""

    exit_code = 3


class SpecSemanticError(InputError):
    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message}")


class UnknownName(InputError):
    def __init__(self, name: str, known: list[str]) -> None:
        self.name = name
        super().__init__(f"unknown name {name!r}; known: {', '.join(known)}")


class RankDeficient(InputError):
    def __init__(self, rank: int, d: int) -> None:
        self.rank = rank
        self.d = d
        super().__init__(f"generators span a rank-{rank} subgroup of Z^{d}")


class NotNested(InputError):
    pass


class BadTransversal(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class NotExpansive(InputError):
    pass


class NotPrimitive(InputError):
    pass


class NotAdmissible(InputError):
    pass


class NoSeedFound(InputError):
    pass


class NotAnLSS(InputError):
    """Two colors landed on one position, or a patch lost a point of its predecessor."""

    def __init__(self, position: tuple[int, ...], colors: tuple[int, ...], detail: str = "") -> None:
        self.position = position
        self.colors = colors
        super().__init__(
            detail or f"not a substitution system: position {position} produced by colors {colors}"
        )


class Diverged(InputError):
    """Stabilization was not reached within the depth cap."""

    def __init__(self, max_depth: int, detail: str = "") -> None:
        self.max_depth = max_depth
        self.detail = detail
        msg = f"no stabilization within depth {max_depth}"
        super().__init__(f"{msg}: {detail}" if detail else msg)


class NotWellDefined(InputError):
    """Two representatives of one cluster class substitute differently."""

    def __init__(self, cluster: tuple[int, ...], positions: tuple[tuple[int, ...], ...]) -> None:
        self.cluster = cluster
        self.positions = positions
        super().__init__(
            f"cluster class {cluster} substitutes differently at centers {positions}"
        )


class AdmissibilityPostcheckFailed(InputError):
    pass


# ---------------------------------------------------------------------------
# Resource caps
# ---------------------------------------------------------------------------

class BudgetExceeded(ModcoError):
    exit_code = 4

    def __init__(self, what: str, budget: int) -> None:
        self.what = what
        self.budget = budget
        super().__init__(f"{what} exceeded budget of {budget}")


class StateBudgetExceeded(BudgetExceeded):
    pass
