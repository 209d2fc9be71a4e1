"""Exception hierarchy shared by all modules."""


class AccError(Exception):
    """Base class for every error raised by the workbench."""


class ScopeError(AccError):
    """A variable, name, locus or method is used outside its binding."""


class SortError(AccError):
    """A term of the wrong sort was supplied to an operation."""


class GuardednessError(AccError):
    """A recursive specification could not be shown guarded."""


class BudgetError(AccError):
    """Rewriting ran out of fuel before reaching head normal form."""


class BoundsError(AccError, ValueError):
    """Exploration bounds are out of range."""


class SpecSyntaxError(AccError):
    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = f"{line}:{column}: " if line is not None else ""
        super().__init__(f"{where}{message}")
