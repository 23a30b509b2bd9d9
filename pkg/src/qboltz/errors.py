"""Exception types shared across the package."""


class QBoltzError(Exception):
    """Base class for all errors raised by qboltz."""


class InvalidStateError(QBoltzError, ValueError):
    """A matrix or vector violates the invariants of the type it was given to."""


class DimensionMismatchError(QBoltzError, ValueError):
    pass


class ZeroWeightError(QBoltzError, ValueError):
    """Conditioning on a projector that carries (numerically) no weight."""


class NotDecoherentInitialStateError(QBoltzError, ValueError):
    """The initial state does not commute with every phase-cell projector."""


class StepPastEndError(QBoltzError):
    pass


class DimensionCapError(QBoltzError):
    """A dense representation was requested beyond the configured size cap."""


class DegenerateAmplitudesError(QBoltzError, ValueError):
    pass


class OrbitCapError(QBoltzError):
    pass


class GridTooCoarseError(QBoltzError, ValueError):
    pass


class MissingCaseBError(QBoltzError, ValueError):
    pass


class ConfigInvalidError(QBoltzError, ValueError):
    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(self.diagnostics))
