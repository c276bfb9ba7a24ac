"""Exception types shared across the package."""


class SingularMatrix(ValueError):
    """Raised when elimination finds no usable pivot.

    Signals a (measure-zero) degenerate channel draw; callers resample.
    """


class NoConvergence(RuntimeError):
    """Power iteration hit its cap without settling.

    Indicates a near-degenerate spectrum; callers resample the channel block.
    """


class LengthMismatch(ValueError):
    """Bit sequences of incompatible lengths were combined."""


class InsufficientGrid(ValueError):
    """The SNR grid is too small or too narrow for a slope fit."""


class MaxResamplesExceeded(RuntimeError):
    """Too many consecutive degenerate channel draws for one trial."""
