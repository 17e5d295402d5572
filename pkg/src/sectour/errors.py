"""Typed errors shared by every module."""


class InvalidParameter(ValueError):
    """An argument violates an operation's precondition."""


class ResourceLimit(RuntimeError):
    """A computation would exceed a configured size cap.

    ``size`` is the offending quantity, ``cap`` the limit in force and
    ``flag`` names the CLI option that raises it.
    """

    def __init__(self, message: str, size: int, cap: int, flag: str = ""):
        super().__init__(message)
        self.size = size
        self.cap = cap
        self.flag = flag


class ConstructionError(RuntimeError):
    """A literal palette construction did not give a block enough colors."""
