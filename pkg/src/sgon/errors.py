"""Exception hierarchy.

Every error carries an ``exit_code`` used by the command-line front end:
1 for input/schema problems, 2 for domain errors, 3 for internal invariant
violations.
"""


class SgonError(Exception):
    exit_code = 2


# -- input / schema ---------------------------------------------------------

class InputError(SgonError):
    exit_code = 1


class ParseError(InputError):
    pass


class SchemaError(InputError):
    pass


# -- domain -----------------------------------------------------------------

class DomainError(SgonError):
    exit_code = 2


class InsufficientApproximation(DomainError):
    pass


class AmbiguousSign(DomainError):
    pass


class DivisionByZero(DomainError, ZeroDivisionError):
    pass


class FieldMismatch(DomainError, TypeError):
    """Two quadratic numbers from different fields were combined."""


class UnsupportedFieldTower(DomainError):
    pass


class SingularBasis(DomainError):
    pass


class NumericallySingular(DomainError):
    pass


class NotAxisAlignedVR(DomainError):
    pass


class DimensionCapExceeded(DomainError):
    pass


class BoxTooLarge(DomainError):
    pass


class NotUpperHalfPlane(DomainError):
    pass


class NotReduced(DomainError):
    pass


class TooFewTermsForPrecision(DomainError):
    pass


# -- internal ---------------------------------------------------------------

class InvariantViolation(SgonError):
    exit_code = 3


class DegenerateNorm(InvariantViolation):
    pass


class CertificateInvalid(InvariantViolation):
    pass
