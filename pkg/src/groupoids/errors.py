"""Exception hierarchy.

Every failure mode has its own class so callers (and the CLI exit-code
mapping) can dispatch on type instead of parsing messages.
"""


class GroupoidError(Exception):
    """Base class for all errors raised by this package."""


# --- malformed inputs ---------------------------------------------------

class InvalidOrder(GroupoidError):
    pass


class MalformedTable(GroupoidError):
    pass


class MalformedMap(GroupoidError):
    pass


class MalformedStructure(GroupoidError):
    pass


class BadBaseId(GroupoidError):
    pass


class BadCarrier(GroupoidError):
    pass


class BadTypeParameter(GroupoidError):
    pass


class InvalidInput(GroupoidError):
    pass


# --- algebraic misuse ---------------------------------------------------

class NotComposable(GroupoidError):
    """Looked up the partial multiplication outside its domain."""


class InvalidMorphism(GroupoidError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class InvalidHom(GroupoidError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class EndpointMismatch(GroupoidError):
    pass


class NonCommutativeGroup(GroupoidError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotEpimorphism(GroupoidError):
    pass


# --- theorem-hypothesis failures ----------------------------------------

class NotTransitive(GroupoidError):
    """The anchor map is not surjective (hypothesis of the trivialization)."""

    def __init__(self, message, missing=None):
        super().__init__(message)
        self.missing = missing


class NotCommutative(GroupoidError):
    """Arrow or base group is non-commutative (trivialization hypothesis)."""


class NoSplitSection(GroupoidError):
    """Exhaustive search proved no homomorphic section exists."""


class SearchBudgetExceeded(GroupoidError):
    """Section search gave up before exhausting the space."""


class SectionInvalid(GroupoidError):
    pass


class InternalInconsistency(GroupoidError):
    """A law that provably follows from already-verified laws failed."""


class UnknownName(GroupoidError):
    pass
