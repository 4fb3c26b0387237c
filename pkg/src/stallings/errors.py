"""Exception hierarchy shared by the library and the CLI."""


class StallingsError(Exception):
    """Base class for domain errors (the CLI maps these to exit code 1)."""


class WordParseError(StallingsError, ValueError):
    pass


class AlphabetMismatchError(StallingsError, ValueError):
    pass


class NotDeterministicError(StallingsError, ValueError):
    pass


class PreconditionError(StallingsError, ValueError):
    """An operation was called outside the inputs it is defined for."""


class StateBudgetExceeded(StallingsError, RuntimeError):
    """A finite-automaton construction grew past its configured state cap."""
