"""Exception hierarchy shared across the engine.

Every domain error is a subclass of TreescopeError so callers (CLI, HTTP
layer) can map failures uniformly. HTTP status codes live in server.py,
not here.
"""


class TreescopeError(Exception):
    """Base class for all engine errors."""


# --- container ---------------------------------------------------------------

class DimensionMismatch(TreescopeError):
    pass


class DuplicateId(TreescopeError):
    pass


class UnlinkedFeature(TreescopeError):
    pass


class InvalidTree(TreescopeError):
    pass


class UnknownId(TreescopeError):
    pass


# --- ingest ------------------------------------------------------------------

class NewickSyntaxError(TreescopeError):
    """Parse failure with 1-based character position and expectation."""

    def __init__(self, position, expected):
        self.position = position
        self.expected = expected
        super().__init__(f"newick syntax error at position {position}: expected {expected}")


class DuplicateLeafLabel(TreescopeError):
    pass


class RaggedRow(TreescopeError):
    def __init__(self, line):
        self.line = line
        super().__init__(f"line {line}: row length does not match header")


class NonNumericCell(TreescopeError):
    def __init__(self, line, column):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: cell is not numeric")


class FileNotFound(TreescopeError):
    pass


class IdMismatch(TreescopeError):
    pass


class BadManifest(TreescopeError):
    pass


# --- transforms --------------------------------------------------------------

class NegativeValue(TreescopeError):
    pass


class ZeroColumn(TreescopeError):
    def __init__(self, sample_id):
        self.sample_id = sample_id
        super().__init__(f"sample {sample_id!r} sums to zero")


class NonPositiveAfterPseudocount(TreescopeError):
    pass


class UnknownColumn(TreescopeError):
    pass


class NonCategoricalColumn(TreescopeError):
    pass


# --- ordination --------------------------------------------------------------

class KTooLarge(TreescopeError):
    pass


class DegenerateInput(TreescopeError):
    pass


class ZeroSample(TreescopeError):
    pass


class RankDeficientDesign(TreescopeError):
    pass


class NoLoadings(TreescopeError):
    pass


class BadComponent(TreescopeError):
    pass


# --- panels ------------------------------------------------------------------

class UnavailablePanel(TreescopeError):
    pass


class BadParameter(TreescopeError):
    def __init__(self, name, message=None):
        self.name = name
        super().__init__(message or f"bad parameter: {name}")


class EmptyAfterRestriction(TreescopeError):
    pass


class UnknownPanel(TreescopeError):
    pass


class UnknownNode(TreescopeError):
    pass


class CycleDetected(TreescopeError):
    pass


# --- provenance / session ----------------------------------------------------

class SchemaViolation(TreescopeError):
    pass


class DigestMismatch(TreescopeError):
    pass
