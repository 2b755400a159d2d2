"""Exception types shared across the package."""


class QevoError(Exception):
    """Base class for all package errors."""


class UnknownToken(QevoError):
    """A token is not present in the vocabulary."""


class LengthMismatch(QevoError):
    """A sequence or bitstring has the wrong length."""


class InvalidMolecule(QevoError):
    """An operation requiring a valid molecule received an invalid one."""


class UnsupportedAtomClass(QevoError):
    """Atom typing fell outside the implemented contribution table."""


class WidthMismatch(QevoError):
    """Two fingerprints have different widths."""


class MissingReference(QevoError):
    """A similarity-weighted loss was requested without a reference."""


class TooManyQubits(QevoError):
    """Requested register size exceeds the configured statevector cap."""


class NonFiniteLoss(QevoError):
    """The objective returned a non-finite value."""


class SpaceTooLarge(QevoError):
    """Requested enumeration exceeds the supported size."""


class ScopeMismatch(QevoError):
    """A run record and a reference space were built over different setups."""


class DegenerateCovariance(QevoError):
    """Too few distinct fingerprints to fit principal components."""


class ConfigError(QevoError):
    """A run configuration failed validation."""
