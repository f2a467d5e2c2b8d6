"""Exception types shared across the package."""


class DoubleKitError(ValueError):
    """Base class for domain errors."""


class RingMismatch(DoubleKitError):
    """Operands live in different polynomial rings."""


class RankMismatch(DoubleKitError):
    """Operands live in free modules of different ranks, or shapes disagree."""


class ParseError(DoubleKitError):
    """Malformed input text; ``pos`` is the 0-based character offset."""

    def __init__(self, message: str, pos: int = 0):
        super().__init__(message)
        self.pos = pos


class NotContained(DoubleKitError):
    """A required submodule containment (or hom image condition) fails."""


class IllDefinedHom(DoubleKitError):
    """Generator images violate a syzygy, so they do not define a homomorphism."""
