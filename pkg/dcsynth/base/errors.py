from typing import Any, Dict, FrozenSet, Optional


class DcsError(Exception):
    """Base class of every diagnostic raised by dcsynth. `code` is the stable prefix tag."""

    code = "E-DCS"

    def __str__(self) -> str:
        return f"{self.code}: {super().__str__()}"


class FspSyntaxError(DcsError):
    code = "E-PARSE"

    def __init__(
        self,
        message: str,
        line: int = 0,
        column: int = 0,
        expected: Optional[FrozenSet[str]] = None,
    ):
        self.line = line
        self.column = column
        self.expected = frozenset(expected or ())
        where = f"{line}:{column}: " if line else ""
        hint = f" (expected one of: {', '.join(sorted(self.expected))})" if self.expected else ""
        super().__init__(f"{where}{message}{hint}")


class DefinitionError(DcsError):
    """Duplicate definition or reference to an undefined process."""

    code = "E-DEF"


class ElaborationError(DcsError):
    code = "E-ELAB"


class ProblemError(DcsError):
    code = "E-PROBLEM"


class CapExceededError(DcsError):
    """A resource cap was hit. `stats` holds whatever was measured before giving up."""

    code = "E-CAP"

    def __init__(self, message: str, kind: str = "states", stats: Optional[Dict[str, Any]] = None):
        self.kind = kind
        self.stats = stats or {}
        super().__init__(message)


class AutFormatError(DcsError):
    code = "E-AUT"


class AlphabetMismatchError(DcsError):
    code = "E-ALPHA"
