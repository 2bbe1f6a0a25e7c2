"""Exception types raised by the verification engine."""


class HstError(Exception):
    """Base class for every error raised by hstlab."""


class ParseError(HstError, ValueError):
    def __init__(self, message, text=None, position=None, line=None, column=None):
        self.text = text
        self.position = position
        self.line = line
        self.column = column
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        if position is not None and line is None:
            where.append(f"position {position}")
        suffix = f" ({', '.join(where)})" if where else ""
        super().__init__(f"{message}{suffix}")


class DivisionByZero(HstError, ZeroDivisionError):
    pass


class Singular(HstError, ArithmeticError):
    """A square matrix has no inverse; ``kernel`` is a nonzero null vector."""

    def __init__(self, message, kernel=None, index=None):
        self.kernel = kernel
        self.index = index
        super().__init__(message)


class DimensionMismatch(HstError, ValueError):
    pass


class NotAntisymmetric(HstError, ValueError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class WrongBidegree(HstError, ValueError):
    pass


class ArityMismatch(HstError, ValueError):
    pass


class NotInverse(HstError, ValueError):
    pass


class JacobiRequired(HstError):
    """Strict mode refuses to certify a structure whose Jacobiator is nonzero."""

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class EpsilonProductNotMinusOne(HstError, ValueError):
    pass


class AxiomFailure(HstError):
    def __init__(self, axiom, message, witness=None):
        self.axiom = axiom
        self.witness = witness
        super().__init__(f"axiom {axiom}: {message}")


class NotHst(HstError):
    def __init__(self, message, report=None):
        self.report = report
        super().__init__(message)


class UnknownExample(HstError, KeyError):
    pass
