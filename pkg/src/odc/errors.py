"""Exception hierarchy shared by the whole package."""


class OdcError(Exception):
    """Base class for all errors raised by this package."""


class InputError(OdcError, ValueError):
    """An argument violates an operation's precondition (bad symbol,
    alphabet mismatch, symbol outside the alphabet, ...)."""


class InvalidInstanceError(InputError):
    """An operation requiring a valid problem instance was handed one that
    fails validation.  Carries the validation report."""

    def __init__(self, message, report):
        super().__init__(message)
        self.report = report


class FormatError(OdcError, ValueError):
    """An instance file (or embedded JSON object) is structurally malformed."""


class OracleBudgetError(OdcError, RuntimeError):
    """The brute-force oracle refused an instance whose assignment space
    exceeds the configured budget.  Never a wrong answer, always a refusal."""


class ContractError(OdcError, RuntimeError):
    """A constructive operation was called outside its contract, e.g.
    synthesis on an unsolvable instance."""
