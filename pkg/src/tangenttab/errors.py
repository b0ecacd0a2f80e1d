"""Exception types shared across the engine."""


class EngineError(Exception):
    """Base class for all tangenttab errors."""


class RangeError(EngineError, ValueError):
    """Arguments outside the domain an operation is defined on."""


class UnknownNormalization(EngineError, LookupError):
    """A required normalization coefficient is absent from the table.

    The engine never guesses missing normalization data; callers must
    supply it explicitly.
    """


class ZeroNormalization(EngineError, ZeroDivisionError):
    """The normalization coefficient needed as a divisor is exactly zero.

    A stored zero encodes "undefined" for in-sum factors, but an undefined
    divisor leaves the requested coefficient uncomputable.
    """


class CalibrationMismatch(EngineError):
    """An exact integrality or cross-check constraint failed.

    This can only arise from inconsistent table data (or a bug); it is
    always surfaced, never silently accepted.
    """


class NotReducible(EngineError):
    """The contact profile has no free point to trade for a contact."""


class UnsupportedOrder(EngineError):
    """Contact order outside what the cubic evaluation layer supports."""


class ProfileMismatch(EngineError):
    """Contact-profile weight bookkeeping is inconsistent."""


class NotEvaluable(EngineError):
    """The profile can be reduced symbolically but has no numeric value."""


class DegenerateConfiguration(EngineError):
    """A geometric input failed a nondegeneracy check.

    Oracles reject such inputs rather than report a wrong count.
    """


class IdenticallyZeroEliminant(EngineError):
    """Elimination collapsed to the zero polynomial (singular input)."""


class ExtraneousFactorAmbiguity(EngineError):
    """An eliminant factor could not be classified as genuine or parasitic."""
