"""Exception hierarchy.

Every error raised by the library derives from :class:`PadeLogError`, so
callers (and the CLI) can catch one class and report ``type(err).__name__``.
"""


class PadeLogError(Exception):
    pass


class InvalidMatrix(PadeLogError, ValueError):
    """Input is not a finite 2-D array of the expected shape."""


class SingularSystem(PadeLogError, ArithmeticError):
    """A pivot fell below the singularity threshold."""


class NonConvergence(PadeLogError, ArithmeticError):
    pass


class NotHermitian(PadeLogError, ValueError):
    pass


class BranchCutSpectrum(PadeLogError, ValueError):
    """The matrix (or a set standing in for its spectrum) touches (-inf, 0]."""


class Overflow(PadeLogError, OverflowError):
    pass


class InvalidOrder(PadeLogError, ValueError):
    pass


class InvalidParams(PadeLogError, ValueError):
    pass


class PoleHit(PadeLogError, ZeroDivisionError):
    pass


class BranchCut(PadeLogError, ValueError):
    """Scalar argument lies on (-inf, -1]."""


class EmptyLevel(PadeLogError, ValueError):
    pass


class NoFeasibleParams(PadeLogError, ValueError):
    pass


class FovCrossesBranchCut(BranchCutSpectrum):
    """The field of values reaches (-inf, 0]; a pseudospectral set may still work."""

    def __init__(self, clearance):
        self.clearance = clearance
        super().__init__(
            f"field of values intersects (-inf, 0] (clearance {clearance:.3e}); "
            "retry with an epsilon-pseudospectrum set (set_mode 'pseudo:<eps>')"
        )


class NormTooLarge(PadeLogError, ValueError):
    pass


class UnknownFamily(PadeLogError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""


class BadParams(PadeLogError, ValueError):
    pass
