"""Domain exceptions with user-friendly messages."""


class BallotError(Exception):
    """Base domain error."""


class ParseError(BallotError):
    """Raised when a bit string, rational or vector cannot be parsed."""


class PreconditionError(BallotError):
    """Raised when an operation is called outside its domain."""


class CapExceededError(BallotError):
    """Raised when an exhaustive scan would exceed its configured cap."""

    def __init__(self, name: str, value: int, cap: int, arg: str = "n") -> None:
        super().__init__(
            f"{arg}={value} exceeds the {name} cap {cap} "
            f"(raise it with --cap or BALLOTOPE_{name.upper()}CAP)"
        )
        self.name = name
        self.value = value
        self.cap = cap


class NotABallotSequenceError(BallotError):
    """Raised when a word is not a bidirectional ballot sequence."""

    def __init__(self, bits: str, reason: str) -> None:
        super().__init__(f"'{bits}' is not accepted: {reason}")


class NotAVertexError(BallotError):
    """Raised when a vector is not a vertex of the ballot polytope."""


class NotInteriorError(NotAVertexError):
    """Raised when a vertex lies on the boundary of the ballot cone."""


class CheckFailedError(BallotError):
    """Raised when a verification invariant does not hold."""

    def __init__(self, invariant: str, detail: str) -> None:
        super().__init__(f"invariant '{invariant}' failed: {detail}")
        self.invariant = invariant


class ConfigurationError(BallotError):
    """Raised when configuration cannot be loaded/validated."""


class StorageError(BallotError):
    """Raised when a JSON or SVG file cannot be read/written."""
