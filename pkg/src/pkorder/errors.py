"""Exception hierarchy shared by the library and the CLI."""


class PkError(Exception):
    """Base class; ``code`` is the machine-readable tag used in CLI reports."""

    code = "error"
    exit_code = 1


class InputError(PkError, ValueError):
    code = "input_error"


class LimitExceeded(PkError):
    """A configured budget was exhausted; no partial answer is returned."""

    code = "limit_exceeded"
    exit_code = 2


class NotCodivisorial(PkError):
    code = "not_codivisorial"


class NotApplicable(PkError):
    code = "not_applicable"
