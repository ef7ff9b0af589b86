"""Exception types raised across the library."""


class QHLabError(Exception):
    """Base class for library errors."""


class TruncationNotSaturated(QHLabError):
    pass


class InvalidRelation(QHLabError):
    pass


class PresentationSyntaxError(QHLabError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class SemanticError(QHLabError):
    pass


class NotAlgebra(QHLabError):
    """Structure constants fail associativity or the unit axiom."""


class NotSplit(QHLabError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NotModule(QHLabError):
    pass


class NotSubmodule(QHLabError):
    pass


class NotEmbedding(QHLabError):
    pass


class AlgebraMismatch(QHLabError):
    pass


class DegreeCapReached(QHLabError):
    """Soft signal: a resolution reached its degree cap without terminating."""


class InputNotQH(QHLabError):
    pass


class InputNotBorel(QHLabError):
    pass


class CyclicQuiver(QHLabError):
    pass


class BQNotBorel(QHLabError):
    pass


class IsoWitnessInvalid(QHLabError):
    pass


class MNotFiltered(QHLabError):
    pass


class ConstructionError(QHLabError):
    """An internal consistency check of a construction failed."""
