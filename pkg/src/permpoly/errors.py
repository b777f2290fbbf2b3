"""Exception hierarchy.

Every error raised on purpose by the library derives from ``PermPolyError``,
which itself is a ``ValueError`` so callers that only care about "bad input"
can catch that.
"""


class PermPolyError(ValueError):
    pass


# field_core
class NonPrime(PermPolyError):
    pass


class ReducibleModulus(PermPolyError):
    pass


class BadTower(PermPolyError):
    pass


class FieldTooLarge(PermPolyError):
    pass


class DivisionByZero(PermPolyError, ZeroDivisionError):
    pass


class MixedFields(PermPolyError):
    pass


class NotADivisor(PermPolyError):
    pass


# poly_core
class ModByZero(PermPolyError, ZeroDivisionError):
    pass


class IndeterminatePoint(PermPolyError):
    """Numerator and denominator of a rational map vanish at the same point."""

    def __init__(self, point=None, msg=None):
        self.point = point
        super().__init__(msg or f"both numerator and denominator vanish at {point}")


# association
class DegreeMismatch(PermPolyError):
    pass


class EqualPolynomials(PermPolyError):
    pass


class BetaNotInMu(PermPolyError):
    pass


class SelfAssociatedResult(PermPolyError):
    pass


# families
class NotAssociated(PermPolyError):
    pass


class NotSelfAssociated(PermPolyError):
    pass


class BadBeta(PermPolyError):
    pass


class BadGamma(PermPolyError):
    pass


class BadDelta(PermPolyError):
    pass


class BadShape(PermPolyError):
    pass


class BadBinomialParams(PermPolyError):
    pass


class NotMonic(PermPolyError):
    pass


class RelationFailed(PermPolyError):
    pass


class BadExponentRange(PermPolyError):
    pass


class MissingParameter(PermPolyError):
    pass


class ParamConstraintViolated(PermPolyError):
    """A named side condition of an explicit construction does not hold."""

    def __init__(self, name, detail=""):
        self.name = name
        super().__init__(f"{name}: {detail}" if detail else name)


class ConditionFailed(PermPolyError):
    """One of the three hypotheses (i), (ii), (iii) of the H-bullet construction failed."""

    def __init__(self, which, detail=""):
        self.which = which
        super().__init__(f"condition ({which}) failed" + (f": {detail}" if detail else ""))


# verify
class TooLarge(PermPolyError):
    pass
