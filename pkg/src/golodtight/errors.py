"""Exception hierarchy shared by every module."""


class GolodTightError(Exception):
    """Base class for all errors raised by golodtight."""


class InputError(GolodTightError):
    pass


class EmptyInput(InputError):
    pass


class LabelOutOfRange(InputError):
    pass


class MissingVertex(InputError):
    pass


class EmptySubset(InputError):
    pass


class ParseError(InputError):
    pass


class UnknownGenerator(InputError):
    pass


class DimensionMismatch(GolodTightError):
    pass


class OverlapTooLarge(GolodTightError):
    pass


class NotDisjoint(GolodTightError):
    pass


class BudgetExceeded(GolodTightError):
    pass


class TooManyVertices(BudgetExceeded):
    pass


class NotPseudomanifold(GolodTightError):
    pass


class NotAChainMap(GolodTightError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class PrerequisiteFailed(GolodTightError):
    pass


class NotConnected(PrerequisiteFailed):
    pass


class DimensionTooLow(PrerequisiteFailed):
    pass


class LinkNotStacked(GolodTightError):
    def __init__(self, message, vertex=None):
        super().__init__(message)
        self.vertex = vertex


class CharacterizationMismatch(GolodTightError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
