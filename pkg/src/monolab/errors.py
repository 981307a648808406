"""Exception hierarchy. The CLI maps each class to an exit code."""


class MonolabError(ValueError):
    """Base class for input and evaluation errors."""

    exit_code = 2


class InputError(MonolabError):
    """Malformed state, matrix, or parameter."""


class DimensionCapError(InputError):
    def __init__(self, dim, cap):
        super().__init__(f"dimension cap exceeded: {dim} > {cap}")
        self.dim = dim
        self.cap = cap


class DispatchError(MonolabError):
    """The requested measure cannot be evaluated exactly on this input class."""

    exit_code = 3
