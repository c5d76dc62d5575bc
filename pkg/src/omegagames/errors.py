"""Exception types shared across the package.

CLI exit codes: 1 usage, 2 budget exceeded, 3 strategy undefined.
"""


class OmegagamesError(Exception):
    pass


class NotationError(OmegagamesError):
    """Parse failure; carries the offending position in the input text."""

    def __init__(self, message, pos=None):
        self.pos = pos
        if pos is not None:
            message = f"{message} (at position {pos})"
        super().__init__(message)


class IllegalMoveError(OmegagamesError):
    pass


class StrategyUndefinedError(OmegagamesError):
    """A strategy's partial choice function had no move although legal moves exist."""

    def __init__(self, message, partial_run=None, player=None):
        super().__init__(message)
        self.partial_run = partial_run
        self.player = player


class BudgetExceededError(OmegagamesError):
    """A play or block did not conclude within the configured budget."""

    def __init__(self, message, partial_run=None):
        super().__init__(message)
        self.partial_run = partial_run
