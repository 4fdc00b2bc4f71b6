"""Exception types shared across the package."""

from __future__ import annotations


class GafracError(Exception):
    """Base class for errors raised by this package."""


class ParseError(GafracError):
    """Expression text could not be parsed.

    Parameters
    ----------
    message : str
        Human-readable description of the failure.
    offset : int
        0-based byte offset into the UTF-8 encoding of the input where
        the failure occurred.
    expected : iterable of str
        Token kinds that would have been accepted at that position.
    """

    def __init__(self, message, offset, expected=()):
        self.offset = int(offset)
        self.expected = tuple(sorted(set(expected)))
        detail = f"{message} at byte offset {self.offset}"
        if self.expected:
            detail += " (expected " + " or ".join(self.expected) + ")"
        super().__init__(detail)


class DomainFault(GafracError):
    """Evaluation left the domain of a subexpression.

    Carries the offending subexpression (rendered to text) and the input
    value, so failures surface with a precise location instead of a bare
    nan propagating through downstream arithmetic.
    """

    def __init__(self, reason, subexpr, x):
        self.reason = str(reason)
        self.subexpr = str(subexpr)
        self.x = float(x)
        super().__init__(f"{self.reason} in {self.subexpr!r} at x = {self.x!r}")


class QuadratureNonConvergence(GafracError):
    """Adaptive quadrature hit its subdivision cap before the tolerance.

    The best estimate so far is attached as ``best`` (a QuadratureResult);
    callers that can tolerate a larger error may use it.
    """

    def __init__(self, message, best):
        self.best = best
        super().__init__(
            f"{message}: best estimate {best.value!r} "
            f"with error {best.error_estimate!r} "
            f"after {best.subdivisions_used} subdivisions"
        )


class PreconditionError(GafracError):
    """A verifier hypothesis failed on the supplied inputs.

    ``certificate`` holds the failed convexity/symmetry certificate (with
    witness) when one exists, else None.
    """

    def __init__(self, message, certificate=None):
        self.certificate = certificate
        super().__init__(message)
