"""Exception hierarchy.

Every error raised on purpose by the package derives from ``QOError``.  The
``exit_code`` attribute is what the command line front end returns.
"""


class QOError(Exception):
    exit_code = 3


class InvalidInput(QOError):
    exit_code = 2


class RankDeficient(InvalidInput):
    pass


class NotSublattice(QOError):
    pass


class EmptyGenerators(QOError):
    pass


class NotSimplicial(QOError):
    pass


class InvalidSubstitution(QOError):
    pass


class NotCharacteristic(InvalidInput):
    pass


class NotMonotone(InvalidInput):
    pass


class NotNormalized(InvalidInput):
    pass


class InternalInconsistency(QOError):
    pass


class NonPolynomialCoefficient(InternalInconsistency):
    pass


class NotStabilized(QOError):
    pass


class BudgetExceeded(QOError):
    exit_code = 4
