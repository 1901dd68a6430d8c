"""Exception hierarchy shared by the library and the command line front end."""


class IntPolyOptError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class EmptyPolytopeError(IntPolyOptError):
    """The feasible set (or its lattice points) is empty."""

    exit_code = 3


class UnboundedPolytopeError(IntPolyOptError):
    """The inequality system does not describe a polytope."""

    exit_code = 4


class DegeneratePolytopeError(IntPolyOptError):
    """The polytope is not full-dimensional."""

    exit_code = 4


class BudgetExceededError(IntPolyOptError):
    exit_code = 5


class NotConvergedError(IntPolyOptError):
    exit_code = 6


class InstanceParseError(IntPolyOptError):
    """Malformed instance file; carries the location of the problem."""

    exit_code = 2

    def __init__(self, message, line=None, column=None, path=None):
        self.line = line
        self.column = column
        self.path = path
        where = []
        if line is not None:
            where.append(f"line {line}, column {column}")
        if path is not None:
            where.append(f"at {path}")
        if where:
            message = f"{message} ({'; '.join(where)})"
        super().__init__(message)
