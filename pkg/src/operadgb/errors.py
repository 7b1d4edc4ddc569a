"""Exception hierarchy.

Every error raised by the engine derives from :class:`OperadError`; the CLI
prints the class name so failures are always attributable to a module.
"""


class OperadError(Exception):
    pass


# tree
class DuplicateLabel(OperadError):
    pass


class ArityMismatch(OperadError):
    pass


class NotShuffleOrdered(OperadError):
    pass


class NonInjectiveMap(OperadError):
    pass


class InvalidMonomial(OperadError):
    pass


# order
class MixedSignature(OperadError):
    pass


# compose
class BadPosition(OperadError):
    pass


class NotAShuffle(OperadError):
    pass


# poly
class ZeroPolynomial(OperadError):
    pass


class NotDivisible(OperadError):
    pass


# groebner
class BoundTooSmall(OperadError):
    pass


class BoundExceeded(OperadError):
    pass


# presentations
class UnknownName(OperadError):
    pass


class MissingParams(OperadError):
    pass


class UnsupportedArity(OperadError):
    pass


class LocatedError(OperadError):
    """Parse-time error carrying a 1-based line/column."""

    def __init__(self, message, line=None, column=None, source=None):
        self.line = line
        self.column = column
        self.source = source
        self.message = message
        where = ""
        if source:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
            if column is not None:
                where += f"{column}:"
        super().__init__(f"{where} {message}" if where else message)


class PresentationSyntaxError(LocatedError):
    pass


class UnknownGenerator(LocatedError):
    pass


class ArityError(LocatedError):
    pass


class NonHomogeneousRelation(LocatedError):
    pass


# conformal
class NegativeIndex(OperadError):
    pass


class MissingAlpha(OperadError):
    pass


class DimensionMismatch(OperadError):
    pass


class NotHomNovikov(OperadError):
    pass


class NotAMorphism(OperadError):
    pass
