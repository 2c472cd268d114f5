"""Exception hierarchy shared by every module."""


class ThicknessError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(ThicknessError, ValueError):
    """A parameter lies outside the domain of the operation."""


class OverlapError(ThicknessError, ValueError):
    """Two gaps of a cut-out description intersect."""


class ContainmentError(ThicknessError, ValueError):
    """A gap or child cube leaves its hull."""


class ExhaustedError(ThicknessError, LookupError):
    """A finite set has fewer gaps than requested."""


class InconclusiveError(ThicknessError):
    """An enclosure straddles the decision threshold; deepen and retry."""


class HypothesisError(ThicknessError):
    """The hypotheses of a theorem are not met."""


class NonterminationError(ThicknessError):
    """An iteration cap was reached."""


class DegenerateError(ThicknessError, ValueError):
    """The input is degenerate for the requested estimate."""


class NotFoundError(ThicknessError, LookupError):
    """An exhaustive search found nothing."""


class ParamMismatchError(ThicknessError, ValueError):
    """Strategies with incompatible parameters were combined."""


class IllegalMoveError(ThicknessError):
    """A player made a move that breaks the game rules."""

    def __init__(self, player, rule):
        super().__init__(f"{player}: {rule}")
        self.player = player
        self.rule = rule


class UnknownError(ThicknessError):
    """An oracle could not decide at the available resolution."""


class ParseError(ThicknessError, ValueError):
    """A set-description document is malformed."""
