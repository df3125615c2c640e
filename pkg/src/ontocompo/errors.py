"""Error types raised by the engines.

Every error carries a machine-readable ``code`` and, when one exists, the id
(or parameter name) it is about, so callers can map failures without parsing
messages.
"""

from __future__ import annotations


class EngineError(Exception):
    code = "engine"

    def __init__(self, message: str, subject: str = ""):
        super().__init__(message)
        self.subject = subject


class DocumentError(EngineError):
    """The supplied application document is unusable."""

    code = "document"


class DocumentSyntaxError(DocumentError):
    code = "syntax"

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        if line is not None:
            message = f"line {line} column {column}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column


class InvalidApplicationError(DocumentError):
    """Parsed structure breaks a referential or structural invariant."""

    code = "invalid-application"

    def __init__(self, violations):
        self.violations = list(violations)
        detail = "; ".join(v.message for v in self.violations)
        subject = self.violations[0].subjects[0] if self.violations and self.violations[0].subjects else ""
        super().__init__(f"invalid application: {detail}", subject)


class UnknownIdError(EngineError):
    code = "unknown-id"


class DuplicateIdError(EngineError):
    code = "duplicate-id"


class PreconditionError(EngineError):
    code = "precondition"


class ConsistencyConflictError(EngineError):
    """A positioning update would make the constraint set unsolvable."""

    code = "conflict"

    def __init__(self, conflicts, subject: str = ""):
        self.conflicts = list(conflicts)
        detail = "; ".join(str(c) for c in self.conflicts)
        super().__init__(f"inconsistent constraints: {detail}", subject)


class ScriptError(EngineError):
    """A session script line could not be parsed or executed."""

    code = "script"

    def __init__(self, message: str, line_number: int | None = None, subject: str = ""):
        super().__init__(message, subject)
        self.line_number = line_number
