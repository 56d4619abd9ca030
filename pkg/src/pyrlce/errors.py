"""Exception hierarchy shared by all modules."""


class RlceError(Exception):
    """Base class for every error raised by this package."""


class UnsupportedDegree(RlceError, ValueError):
    pass


class DivisionByZero(RlceError, ZeroDivisionError):
    pass


class DimensionMismatch(RlceError, ValueError):
    pass


class SingularMatrix(RlceError, ValueError):
    pass


class InvalidParameters(RlceError, ValueError):
    pass


class UnknownLevel(RlceError, KeyError):
    pass


class DecodeFailure(RlceError):
    pass


class DecryptError(RlceError):
    """Ciphertext rejected.  Decoding failure and a failed weight check look the same."""


class Infeasible(RlceError):
    pass


class FormatError(RlceError, ValueError):
    """Malformed key, ciphertext or report file."""


class IndexOutOfRange(RlceError, IndexError):
    pass
