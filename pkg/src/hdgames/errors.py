"""Exceptions shared by the game engines."""


class IllegalMove(Exception):
    """A strategy or a human chose something the rules do not allow."""

    def __init__(self, message: str, position=None, constraint=None):
        super().__init__(message)
        self.position = position
        self.constraint = constraint


class IllegalOffer(IllegalMove):
    """A dimension-game offer broke the protocol (empty, wrong length, overlapping balls)."""


class NotInSubcanopy(ValueError):
    pass
