"""Exception hierarchy shared by every module in the package."""


class GameError(Exception):
    """Base class for all errors raised by lorenzgame."""


class InvalidGameError(GameError, ValueError):
    """Malformed game data (bad n, missing coalitions, nonzero empty worth)."""


class ContractError(GameError, ValueError):
    """An operation was called outside its precondition.

    Examples: payoff vectors of the wrong length, comparing Lorenz order on
    vectors with different totals, reducing to the grand coalition.
    """


class NotSupermodularError(ContractError):
    """A structural algorithm was asked to run on a non-convex game."""


class WorthOverflowError(GameError, OverflowError):
    """An exact value left the signed 64-bit range allowed for worths."""


class BudgetExceededError(GameError):
    """An enumeration would generate more candidate vectors than allowed."""

    def __init__(self, needed, budget, what="candidate vectors"):
        self.needed = needed
        self.budget = budget
        super().__init__(
            f"enumeration needs at least {needed} {what}, budget is {budget}"
        )


class InternalConsistencyError(GameError, AssertionError):
    """Two independent computations disagreed; indicates a bug."""


class GameFileError(InvalidGameError):
    """A game file could not be parsed."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}, column {column})"
        super().__init__(message + where)
