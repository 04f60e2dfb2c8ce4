"""Typed errors shared across the store, query language, agents and API."""

from __future__ import annotations


class KgAtlasError(Exception):
    """Base class for all kgatlas errors."""


# --- graph store -----------------------------------------------------------

class InvalidName(KgAtlasError):
    """Node name is empty or conflicts with the merge key."""


class InvalidProperty(KgAtlasError):
    """Property value is not text, a finite number, or a flag."""


class UnknownLabel(KgAtlasError):
    """Node label is not part of the schema."""


class UnknownRelType(KgAtlasError):
    """Relationship type is not part of the schema."""


class NodeNotFound(KgAtlasError):
    """Referenced node id does not exist in the store."""


class InvalidKeyword(KgAtlasError):
    """Search keyword is empty."""


class SnapshotFormatError(KgAtlasError):
    """Snapshot file is not valid. Carries line/offset when the underlying
    JSON parser provides them; structural problems carry a description only."""

    def __init__(self, message: str, *, line: int | None = None, offset: int | None = None):
        if line is not None:
            message = f"{message} (line {line}, offset {offset})"
        super().__init__(message)
        self.line = line
        self.offset = offset


# --- query language --------------------------------------------------------

class QueryError(KgAtlasError):
    """Base class for lexing, parsing and execution errors."""


class LexError(QueryError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class ParseError(QueryError):
    def __init__(self, message: str, offset: int, expected: tuple[str, ...] = ()):
        if expected:
            message = f"{message}; expected {' or '.join(expected)}"
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset
        self.expected = expected


class BindError(QueryError):
    """A variable is referenced before any clause binds it, or rebound illegally."""


class MissingParam(QueryError):
    """Query references a parameter the caller did not supply."""

    def __init__(self, name: str):
        super().__init__(f"missing parameter ${name}")
        self.name = name


class QueryTypeError(QueryError):
    """Operand has the wrong type (CONTAINS needs text, LIMIT a nonnegative int)."""


# --- ingestion pipeline ----------------------------------------------------

class ProviderError(KgAtlasError):
    """A pluggable provider (LM, search, embedder) failed. `stage` names the step."""

    def __init__(self, stage: str, message: str = ""):
        super().__init__(f"provider failure in {stage}" + (f": {message}" if message else ""))
        self.stage = stage


class ExtractionFormatError(KgAtlasError):
    """Provider output for a page could not be parsed into a product record."""


class IncompleteProduct(KgAtlasError):
    """Product record is missing a key attribute required for persistence."""


class InvalidQuery(KgAtlasError):
    """User product query cannot be processed (e.g. no core parameters)."""


# --- analysis agent --------------------------------------------------------

class NotAProduct(KgAtlasError):
    """Analysis was requested for a node that is not labeled Product."""


class AnalysisTimeout(KgAtlasError):
    """Language-model call did not finish within the configured timeout."""
