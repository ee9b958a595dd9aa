"""Exception types shared across the package."""


class PositroidError(Exception):
    """Base class for all domain errors."""


class EmptyBases(PositroidError):
    """A matroid needs at least one basis."""


class MixedCardinality(PositroidError):
    """All bases of a matroid must have the same size."""


class ExchangeViolation(PositroidError):
    """Basis exchange fails; carries a witnessing triple (b1, b2, x)."""

    def __init__(self, b1, b2, x):
        self.b1 = frozenset(b1)
        self.b2 = frozenset(b2)
        self.x = x
        super().__init__(
            f"exchange axiom fails for B1={sorted(self.b1)}, "
            f"B2={sorted(self.b2)}, x={x}"
        )


class GroundSetMismatch(PositroidError):
    """Operands live on different ground sets."""


class NotAQuotient(PositroidError):
    """An operation required a quotient pair and did not get one."""


class InvalidNecklace(PositroidError):
    """Sequence of sets violates the necklace transition rule."""


class NotAPositroid(PositroidError):
    """Bases -> permutation conversion hit a non-positroid.

    Carries the smallest positroid containing the input (the positroid of
    its necklace) so callers can report it.
    """

    def __init__(self, message, envelope):
        self.envelope = envelope
        super().__init__(message)


class NonIncreasingPoints(PositroidError):
    """Realization points must be strictly increasing and positive."""


class IntervalTooLong(PositroidError):
    """A frozen cyclic component is too long for the requested rank."""


class CapExceeded(PositroidError):
    """Ground set exceeds the configured cap for exhaustive work."""


class ParseError(PositroidError):
    """Malformed textual input."""
