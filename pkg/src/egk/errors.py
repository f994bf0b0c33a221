"""Exception types shared across the package."""


class EgkError(Exception):
    """Base class for all errors raised by this package."""


class InputError(EgkError, ValueError):
    """A semantically invalid argument (unknown label, bad range, ...)."""


class FormatError(EgkError, ValueError):
    """A malformed input file; the message carries the offending location."""
