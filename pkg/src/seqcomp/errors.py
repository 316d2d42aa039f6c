"""Exception hierarchy shared across the package."""


class SeqCompError(Exception):
    """Base class for every error raised by seqcomp."""


class AlphabetMismatchError(SeqCompError, ValueError):
    """Two operands live over different moduli."""


class DimensionMismatchError(SeqCompError, ValueError):
    """Operands disagree in length, flock size or family size."""


class PreconditionError(SeqCompError, ValueError):
    """A construction parameter violates the theorem's stated hypotheses."""


class UnsupportedParameterError(PreconditionError):
    """Parameters that the construction formula leaves undefined."""


class VerificationRefusedError(SeqCompError):
    """An input or output failed its correlation check."""


class EngineDisagreementError(SeqCompError):
    """The exact and floating zero tests returned different verdicts."""
