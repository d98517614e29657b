"""Named domain errors.

Every error a caller is expected to handle derives from :class:`DomainError`;
the command line maps those to exit code 1.
"""


class DomainError(Exception):
    """Base class for all named errors raised by the library."""


# scalar fields and polynomials

class DescriptorMismatch(DomainError):
    pass


class DivisionByZero(DomainError, ZeroDivisionError):
    pass


class NotPrime(DomainError):
    pass


class NotIrreducible(DomainError):
    pass


class ZeroPolynomial(DomainError):
    pass


class UnsupportedField(DomainError):
    """The requested operation needs a field the library does not provide
    (number fields, towers over a non-prime finite field)."""


class DuplicateRoots(DomainError):
    pass


class DegreeMismatch(DomainError):
    pass


# curves and points

class PointNotOnCurve(DomainError):
    pass


class SingularPoint(DomainError):
    pass


class ZeroForm(DomainError):
    pass


class SharedComponent(DomainError):
    pass


class SingularCurve(DomainError):
    pass


class CoincidentLines(DomainError):
    pass


class PreconditionError(DomainError):
    pass


# Carnot configurations

class InvariantViolation(DomainError):
    def __init__(self, hypothesis, detail=""):
        self.hypothesis = hypothesis
        msg = hypothesis if not detail else f"{hypothesis}: {detail}"
        super().__init__(msg)


class NoAdmissibleSolution(DomainError):
    pass


class CarnotViolated(DomainError):
    pass


class InconsistentSystem(DomainError):
    pass


class AttemptsExhausted(DomainError):
    def __init__(self, trials, detail=""):
        self.trials = trials
        super().__init__(f"no success after {trials} trials" + (f" ({detail})" if detail else ""))


# linear systems

class ROutOfRange(DomainError):
    pass


class DegreeDeficit(DomainError):
    pass


class EmptySystem(DomainError):
    pass


class DimensionZero(DomainError):
    pass


# constructor

class FieldTooSmall(DomainError):
    pass


class InsufficientRationalPoints(DomainError):
    pass


class CertificationFailed(DomainError):
    def __init__(self, step, detail=""):
        self.step = step
        super().__init__(f"{step}: {detail}" if detail else step)
