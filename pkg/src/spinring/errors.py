"""Exception hierarchy. Everything raised on purpose derives from SpinRingError."""


class SpinRingError(Exception):
    pass


class InvalidSectorError(SpinRingError, ValueError):
    pass


class ShapeError(SpinRingError, ValueError):
    pass


class TooLargeError(SpinRingError):
    pass


class SolverError(SpinRingError):
    """Eigensolver gave up; ``best_residual`` is the smallest residual reached."""

    def __init__(self, message, best_residual=float("nan")):
        super().__init__(message)
        self.best_residual = best_residual


class NotMomentumEigenstateError(SpinRingError):
    def __init__(self, message, momentum_index, fidelity):
        super().__init__(message)
        self.momentum_index = momentum_index
        self.fidelity = fidelity


class RDMStructureError(SpinRingError):
    """Two-site density matrix lacks the symmetric (v, w, z) form."""

    def __init__(self, message, matrix):
        super().__init__(message)
        self.matrix = matrix


class AmbiguityError(SpinRingError):
    pass


class NoCrossingError(SpinRingError):
    pass


class InvalidCoveringError(SpinRingError, ValueError):
    pass


class NotDegenerateError(SpinRingError):
    pass


class UnsupportedSizeError(SpinRingError, ValueError):
    pass
