"""Exception types.  All derive from ``ValueError`` so callers that only
care about bad input can catch that."""


class QutritError(ValueError):
    pass


class AllZeroError(QutritError):
    pass


class NonFiniteError(QutritError):
    pass


class NotNormalizedError(QutritError):
    pass


class NotHermitianError(QutritError):
    pass


class NotUnitaryError(QutritError):
    pass


class ZeroVectorError(QutritError):
    pass


class OutOfRangeError(QutritError):
    pass


class NotAntipodalError(QutritError):
    pass


class NotAlignedError(QutritError):
    pass


class NoCountsError(QutritError):
    pass
