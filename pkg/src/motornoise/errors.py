"""Exception types shared across the package."""


class MotorNoiseError(Exception):
    """Base class for all package-specific errors."""


class SchemaError(MotorNoiseError):
    """Column layout of a data file does not match the expected schema."""


class ParseError(MotorNoiseError):
    """A cell of a data file could not be parsed as a number."""


class ValidationError(MotorNoiseError):
    """Data or configuration values violate a documented contract."""


class DomainError(MotorNoiseError):
    """An input lies outside the mathematical domain of an operation."""


class NumericError(MotorNoiseError):
    """A computation produced a non-finite intermediate or result."""


class SerializationError(MotorNoiseError):
    """A model file is malformed, truncated, or of an unknown version."""
