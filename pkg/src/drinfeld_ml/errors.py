"""Exception hierarchy shared by every module of the package."""


class DrinfeldError(Exception):
    """Base class for all errors raised by this package."""


class PreconditionViolated(DrinfeldError):
    """A documented precondition of an operation does not hold."""


class NotAPthPower(PreconditionViolated):
    pass


class PoleAtPlace(PreconditionViolated):
    """The rational function has a pole at the requested place."""


class ZeroPolynomial(PreconditionViolated):
    pass


class ZeroConjugator(PreconditionViolated):
    pass


class ZeroAnnihilator(PreconditionViolated):
    pass


class ModeMismatch(PreconditionViolated):
    """Operation requires the other host-field mode (FINITE vs RATFUNC)."""


class BadReduction(PreconditionViolated):
    pass


class NotIrreducible(PreconditionViolated):
    pass


class EnumerationTooLarge(DrinfeldError):
    pass


class ParseError(DrinfeldError):
    def __init__(self, message, line=1, column=1, text=None):
        self.message = message
        self.line = line
        self.column = column
        self.text = text
        super().__init__(f"{message} (line {line}, column {column})")
