"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class LeftOrthError(Exception):
    """Base class for all errors raised by :mod:`leftorth`."""


class ConfigurationError(LeftOrthError, ValueError):
    """Raised when raw component/incidence data does not form a valid configuration."""


class DuplicateId(ConfigurationError):
    pass


class EmptyConfiguration(ConfigurationError):
    pass


class SelfLoop(ConfigurationError):
    pass


class UnknownIdInIncidence(ConfigurationError):
    pass


class InvalidDivisor(LeftOrthError, ValueError):
    """Negative multiplicity or a key outside the ambient configuration."""


class MismatchedConfiguration(LeftOrthError, ValueError):
    pass


class ZeroDivisor(LeftOrthError, ValueError):
    pass


class NotSimpleConfiguration(LeftOrthError, ValueError):
    pass


class NotReduced(LeftOrthError, ValueError):
    pass


class NotTreeOfLines(LeftOrthError, ValueError):
    pass


class EnumerationCapExceeded(LeftOrthError, RuntimeError):
    def __init__(self, needed: int, cap: int) -> None:
        super().__init__(f"enumeration needs {needed} candidates, cap is {cap}")
        self.needed = needed
        self.cap = cap


class DuplicatePoints(LeftOrthError, ValueError):
    pass


class NegativeDegree(LeftOrthError, ValueError):
    pass


class NonSymmetric(LeftOrthError, ValueError):
    pass


class NegativePairwisePairing(LeftOrthError, ValueError):
    pass


class NonIntegralGenus(LeftOrthError, ValueError):
    pass


class NegativeGenus(LeftOrthError, ValueError):
    pass


class InputError(LeftOrthError, ValueError):
    """Malformed CLI input document."""


class InputSyntaxError(InputError):
    def __init__(self, msg: str, line: int, column: int) -> None:
        super().__init__(f"line {line}, column {column}: {msg}")
        self.line = line
        self.column = column


class SchemaError(InputError):
    def __init__(self, field: str, msg: str) -> None:
        super().__init__(f"{field}: {msg}")
        self.field = field
