"""Exception hierarchy shared by every simulator module."""


class FFTSimError(Exception):
    """Base class for all simulator errors."""


class ConfigurationError(FFTSimError, ValueError):
    """Invalid static configuration: bad sizes, formats, or stage numbers."""


class InputError(FFTSimError, ValueError):
    """Malformed or out-of-contract input data."""


class ProtocolError(FFTSimError, RuntimeError):
    """A hardware block was driven out of sequence."""
