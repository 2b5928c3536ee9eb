"""Source spans and diagnostics shared by the parser, resolver and CLI."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class Severity(str, Enum):
    ERROR = "Error"
    WARNING = "Warning"


# Stable diagnostic codes. Keep in sync with the table in README.md.
CODES = {
    "E001": "unknown character",
    "E002": "unexpected token",
    "E003": "unclosed brace or unexpected end of input",
    "E004": "malformed qualified name",
    "E005": "duplicate name",
    "E006": "unknown class",
    "E007": "unknown data member",
    "E008": "relationship declared outside the scope of its module",
    "E009": "invalid JSON model",
    "E010": "ambiguous class name",
}


@dataclass(frozen=True, order=True)
class SourceSpan:
    line: int = 1
    column: int = 1
    length: int = 0

    def __post_init__(self):
        if self.line < 1 or self.column < 1 or self.length < 0:
            raise ValueError(f"invalid span {self.line}:{self.column}+{self.length}")

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


@dataclass(frozen=True)
class Diagnostic:
    code: str
    message: str
    span: SourceSpan
    severity: Severity = Severity.ERROR

    def __post_init__(self):
        if self.code not in CODES:
            raise ValueError(f"undocumented diagnostic code {self.code}")

    def render(self, path: str | None = None) -> str:
        where = f"{path}:{self.span}" if path else str(self.span)
        return f"{where}: {self.severity.value.lower()} {self.code}: {self.message}"


class DiagnosticError(Exception):
    """Raised with every collected diagnostic once a phase has finished."""

    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = sorted(diagnostics, key=lambda d: (d.span, d.code))
        super().__init__("\n".join(d.render() for d in self.diagnostics))
