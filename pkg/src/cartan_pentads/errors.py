"""Exception classes raised across the package."""


class PentadError(Exception):
    """Base class for every error raised by cartan_pentads."""


class SpecParseError(PentadError, ValueError):
    """A spec file or a serialized rational could not be parsed."""


class InvariantViolation(PentadError, ValueError):
    """Input data parses but breaks a mathematical precondition."""


class SingularMatrix(InvariantViolation):
    pass


class DimensionMismatch(InvariantViolation):
    pass


class SizeMismatch(DimensionMismatch):
    pass


class NotAPermutation(InvariantViolation):
    pass


class InvalidPentad(InvariantViolation):
    pass


class SingularGamma(InvalidPentad):
    pass


class AsymmetricPentad(InvariantViolation):
    pass


class AsymmetricInputs(AsymmetricPentad):
    pass


class NotRegular(InvariantViolation):
    pass


class NotSymmetrizable(InvariantViolation):
    pass


class NegativeWeightEntry(InvariantViolation):
    pass


class SingularInput(InvariantViolation):
    pass


class WeightMismatch(InvariantViolation):
    pass


class TruncationLimit(PentadError):
    """Requested truncation degree exceeds the configured cap."""


class NotFullyExtended(PentadError):
    pass
