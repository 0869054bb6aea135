"""Exception hierarchy; each class carries the CLI exit status it maps to."""


class QtGrothError(Exception):
    exit_code = 2


class ValidationError(QtGrothError, ValueError):
    """Bad user input: unsupported type, malformed monomial, non-reduced word."""

    exit_code = 1


class DepthError(QtGrothError):
    """An inverse quantum Cartan lookup fell below the tabulated depth."""

    exit_code = 2


class ConsistencyError(QtGrothError):
    """An internal cross-check failed; indicates a bug upstream."""

    exit_code = 2


class IdentityViolation(QtGrothError):
    """A claimed algebraic identity does not hold."""

    exit_code = 3
