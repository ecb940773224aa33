"""Exception hierarchy.

Every error raised on bad user input derives from :class:`InputError`
(CLI exit code 2).  :class:`CapExceeded` maps to exit code 3 and
:class:`InvariantBreach` to exit code 4.
"""

from __future__ import annotations


class OvalSieveError(Exception):
    pass


class InputError(OvalSieveError, ValueError):
    pass


class InvariantBreach(OvalSieveError, AssertionError):
    """An internal consistency check failed. Always a bug."""


class CapExceeded(OvalSieveError):
    pass


class SchemeSyntaxError(InputError):
    def __init__(self, message: str, text: str, position: int):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}")

    def pointer(self) -> str:
        return f"{self.text}\n{' ' * self.position}^"


class SchemeTooLarge(InputError):
    pass


class InvalidScheme(InputError):
    pass


class OddOvalCount(InputError):
    pass


class MissingOrientation(InputError):
    pass


class EvenDegree(InputError):
    pass


class OddDegree(InputError):
    pass


class NotMCurve(InputError):
    pass


class ExceedsHarnack(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class FormError(InputError):
    pass


class NotIsotropic(InputError):
    def __init__(self, message: str, witness):
        self.witness = witness
        super().__init__(f"{message}: witness {list(witness)}")


class InconsistentInduced(InvariantBreach):
    pass


class NotEven(InputError):
    pass


class DegenerateForm(InputError):
    pass


class EvenSequence(InputError):
    pass


class NonOrientablePlus(InputError):
    pass


class ArrangementError(InputError):
    pass


class IndexInconsistent(InputError):
    def __init__(self, message: str, cycle):
        self.cycle = cycle
        super().__init__(f"{message}: cycle {' -> '.join(map(str, cycle))}")


class OddBidegree(InputError):
    pass


class NonBipartite(InputError):
    pass


class DivisibilityViolated(InputError):
    pass


class HypothesisFailed(InputError):
    """A required hypothesis flag was supplied as false."""


class NotSpin(InputError):
    pass
