"""Exception hierarchy shared across the package."""


class OrthInvError(Exception):
    """Base class for all package errors."""


class NonDivisible(OrthInvError, ArithmeticError):
    """An exact division failed.

    Raised while building the integer invariants this means a divisibility
    claim was falsified (or there is a bug); it is never rounded away.
    """

    def __init__(self, message, monomial=None, coefficient=None, divisor=None):
        super().__init__(message)
        self.monomial = monomial
        self.coefficient = coefficient
        self.divisor = divisor


class RingMismatch(OrthInvError, TypeError):
    pass


class ParseError(OrthInvError, ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class MissingImage(OrthInvError, LookupError):
    pass


class WrongArity(OrthInvError, ValueError):
    pass


class ArityParity(OrthInvError, ValueError):
    pass


class InvalidSpec(OrthInvError, ValueError):
    pass


class NotMultilinear(OrthInvError, ValueError):
    pass


class UnsupportedDimension(OrthInvError, ValueError):
    pass


class TooLarge(OrthInvError, ValueError):
    pass
