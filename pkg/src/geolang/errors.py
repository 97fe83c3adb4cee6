"""Exception hierarchy shared by all geolang modules.

Every error that a pipeline can surface maps to a distinct CLI exit code
(see geolang.cli.EXIT_CODES).
"""


class GeolangError(Exception):
    """Base class for all library errors."""


class UnknownSymbol(GeolangError):
    """A word contains a letter outside the relevant alphabet."""


class AlphabetMismatch(GeolangError):
    """Two machines or a machine and a word disagree on the alphabet."""


class BudgetExceeded(GeolangError):
    """An enumeration grew past the configured element or word cap."""

    def __init__(self, stage, limit):
        super().__init__(f"{stage}: exceeded budget of {limit}")
        self.stage = stage
        self.limit = limit


class NotGeodesic(GeolangError):
    """An operation required a geodesic word and got a non-geodesic one."""


class FilterRejected(GeolangError):
    """The base word itself fails the window filter."""


class InconsistentLocality(GeolangError):
    """Two words with equal signatures disagree on a one-letter extension.

    Signals that the locality parameter m is too small for the model and
    filter at hand; retry with a larger m.
    """

    def __init__(self, m, witness_u, witness_v, letter, reason):
        super().__init__(
            f"locality parameter m={m} too small: words {''.join(witness_u) or 'e'} and "
            f"{''.join(witness_v) or 'e'} share a signature but disagree on extension "
            f"{letter!r} ({reason})"
        )
        self.m = m
        self.witness_u = witness_u
        self.witness_v = witness_v
        self.letter = letter
        self.reason = reason


class BoundTooSmall(GeolangError):
    """The discrepancy bound r missed an equal pair found by the oracle."""

    def __init__(self, r, witness=None, message=None):
        if message is None:
            message = f"fellow-travel bound r={r} too small"
            if witness is not None:
                u, v = witness
                message += f" (witness pair {''.join(u)!r}, {''.join(v)!r})"
        super().__init__(message)
        self.r = r
        self.witness = witness


class NondeterministicInput(GeolangError):
    """Operation requires a deterministic machine."""


class NotTrimmed(GeolangError):
    """Operation requires a trimmed (pruned) machine."""


class NoConvergence(GeolangError):
    """Eigenvalue iteration failed to settle within its cap."""

    def __init__(self, bracket):
        super().__init__(f"eigenvalue estimate did not converge; last bracket {bracket}")
        self.bracket = bracket


class NoRecurrence(GeolangError):
    """No linear recurrence of the allowed order reproduces the counts."""


class PrefixTooShort(GeolangError):
    """Pumping needs a prefix of length at least i + state count + 1."""


class NotAccepted(GeolangError):
    """The supplied word is not accepted by the machine."""


class EndpointMismatch(GeolangError):
    """Fellow-traveling check needs endpoints equal or distance <= 1."""


class EmptyWord(GeolangError):
    """A nonempty word was required."""


class UnknownScenario(GeolangError):
    """No scenario registered under the requested name."""


class GroupFileError(GeolangError):
    """A group description file violated the documented schema."""
