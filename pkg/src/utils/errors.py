#!/usr/bin/env python3
"""
Error types for the uniserial lab

Every error raised on purpose by the library derives from UniserialLabError,
so the CLI can tell an expected diagnostic from a crash.
"""
from typing import Optional


class UniserialLabError(Exception):
    """Base class for all library errors."""


# Quivers and paths

class QuiverError(UniserialLabError):
    """Malformed quiver or path."""


class CompositionError(QuiverError):
    """Two paths whose endpoints do not match were composed."""


class UnknownVertexError(QuiverError):
    pass


class UnknownArrowError(QuiverError):
    pass


class UnsupportedConfigurationError(UniserialLabError):
    """Input lies outside the setting an operation is defined for."""


# Algebras

class AlgebraError(UniserialLabError):
    """Problem building or querying a bound quiver algebra."""


class NonParallelRelationError(AlgebraError):
    pass


class ShortRelationTermError(AlgebraError):
    """A relation term has length < 2, so the ideal is not inside J^2."""


class NotAdmissibleError(AlgebraError):
    """No L <= degree_cap with J^L inside the ideal was found."""


class MixedAlgebraError(AlgebraError):
    pass


class PathIsZeroError(AlgebraError):
    pass


class NotMonomialError(AlgebraError):
    pass


# Modules

class ModuleError(UniserialLabError):
    """Malformed representation or module map."""


class RelationViolationError(ModuleError):
    """Arrow matrices do not satisfy the algebra's relations."""

    def __init__(self, message: str, violations: Optional[list] = None):
        self.violations = violations or []
        super().__init__(message)


class CapExceededError(UniserialLabError):
    """A configured size cap was exceeded."""


class NotIndecomposableError(ModuleError):
    pass


# Uniserial varieties

class VarietyError(UniserialLabError):
    pass


class PointNotInVarietyError(VarietyError):
    """The scalar tuple does not give a uniserial module with the mast."""


class InfiniteFieldError(VarietyError):
    pass


# Irreducibility and AR theory

class WitnessConstructionError(UniserialLabError):
    """No factorization witness could be built and verified."""


class ARError(UniserialLabError):
    pass


class ProjectiveModuleError(ARError):
    """Operation needs a nonprojective module."""


class VerificationError(ARError):
    """A computed almost split sequence failed its behavioural check."""


class InvariantViolation(UniserialLabError):
    """A proven bound or dichotomy failed: an implementation bug."""


# Front end

class ParseError(UniserialLabError):
    """Error while reading .qvr source text, with a source position."""

    def __init__(
        self,
        message: str,
        line: Optional[int] = None,
        column: Optional[int] = None,
        source_line: Optional[str] = None,
    ):
        self.message = message
        self.line = line
        self.column = column
        self.source_line = source_line
        super().__init__(self._format_message())

    def _format_message(self) -> str:
        parts = []
        if self.line is not None:
            parts.append(f"{self.line}:{self.column}: ")
        parts.append(self.message)
        if self.source_line is not None and self.column is not None:
            parts.append(f"\n  {self.source_line}")
            parts.append(f"\n  {' ' * (self.column - 1)}^")
        return "".join(parts)


class ScanError(ParseError):
    """Error during tokenization."""


class SyntaxError_(ParseError):
    """Token stream does not match the grammar."""


class SemanticError(ParseError):
    """Well-formed text describing an invalid quiver or relation."""
