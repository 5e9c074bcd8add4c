"""Exception hierarchy shared by every layer of the package."""


class QGWAError(Exception):
    """Base class for all errors raised by qgwa."""


class DivisionByZero(QGWAError, ZeroDivisionError):
    pass


class MixedFields(QGWAError):
    pass


class MixedRings(QGWAError):
    pass


class MixedAlgebras(QGWAError):
    pass


class NegativeExponentInPolyRing(QGWAError):
    pass


class ZeroPolynomial(QGWAError):
    pass


class ZeroElement(QGWAError):
    pass


class ValidationError(QGWAError):
    pass


class InvalidGenerator(QGWAError):
    pass


class NotAUnit(QGWAError):
    pass


class InconsistentImages(QGWAError):
    def __init__(self, relation, residual=None):
        self.relation = relation
        self.residual = residual
        super().__init__(f"images violate the relation {relation}")


class NonInvertibleImageOfH(QGWAError):
    pass


class GammaNotInCg(QGWAError):
    pass


class QNotMinusOne(QGWAError):
    pass


class MatrixNotInH(QGWAError):
    pass


class NotComposable(QGWAError):
    pass


class NotRecognizedInvertible(QGWAError):
    pass


class ParseError(QGWAError, SyntaxError):
    """Syntax error carrying a 1-based line and column."""

    def __init__(self, message, text="", pos=0):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} (line {line}, column {col})")
        self.message = message
        self.line = line
        self.column = col
        self.pos = pos
