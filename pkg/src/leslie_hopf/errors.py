"""Exception types shared across the package."""


class LeslieHopfError(Exception):
    """Base class for every error raised by this package."""


class DegreeError(LeslieHopfError, ValueError):
    """A polynomial has the wrong degree in the variable being eliminated."""


class DegenerateInput(LeslieHopfError, ValueError):
    """The input polynomial is identically zero where that is not allowed."""


class DimensionError(LeslieHopfError, ValueError):
    """A polynomial system expected to be zero-dimensional is not."""


class DomainError(LeslieHopfError, ValueError):
    """An argument lies outside the domain an operation is defined on."""


class NotAntiSaddle(LeslieHopfError, ValueError):
    """The equilibrium has non-positive Jacobian determinant."""


class NotCenterFocusType(LeslieHopfError, ValueError):
    """The linear part is not a rotation (determinant is not positive)."""


class NonzeroTrace(LeslieHopfError, ValueError):
    """Focal values were requested at a point whose trace does not vanish."""


class RegimeError(LeslieHopfError, ValueError):
    """Parameters fall outside the regime a formula or theorem covers."""


class Inconclusive(LeslieHopfError):
    """An exact decision procedure ran out of its refinement budget."""


class StiffnessError(LeslieHopfError, RuntimeError):
    """Integration stalled on the step-size floor.

    The partial trajectory integrated so far is kept on ``trajectory``.
    """

    def __init__(self, message, trajectory=None):
        super().__init__(message)
        self.trajectory = trajectory
