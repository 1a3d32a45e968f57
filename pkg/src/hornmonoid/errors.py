"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class HornError(Exception):
    """Base class for all errors raised by hornmonoid."""


class AlphabetError(HornError):
    """An operation saw atoms outside of its ambient alphabet."""

    def __init__(self, missing, context: str = ""):
        self.missing = tuple(sorted(missing))
        names = ", ".join(str(a) for a in self.missing)
        msg = f"atoms not in alphabet: {names}"
        if context:
            msg = f"{context}: {msg}"
        super().__init__(msg)


class PrimeCollisionError(HornError):
    """The alphabet already holds primed atoms where fresh copies are needed."""


class CyclicError(HornError):
    """A theory has no level mapping. ``cycle`` holds one witness cycle of atoms."""

    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__("theory is cyclic: " + " -> ".join(str(a) for a in self.cycle + self.cycle[:1]))


class ParseError(HornError):
    def __init__(self, message: str, line: int, column: int, expected=(), source: str | None = None):
        self.line = line
        self.column = column
        self.expected = tuple(sorted(set(expected)))
        self.source = source
        where = f"{source}:" if source else ""
        text = f"{where}{line}:{column}: {message}"
        if self.expected:
            text += " (expected one of: " + ", ".join(self.expected) + ")"
        super().__init__(text)


class UnboundIdentifierError(HornError):
    pass


class ArityError(HornError):
    pass


class EvaluationTypeError(HornError):
    """An expression produced a value of the wrong kind, e.g. a proper theory where atoms were needed."""


class UnknownLawError(HornError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class DomainTooLargeError(HornError):
    pass


class UnsatisfiableParamsError(HornError, ValueError):
    pass
