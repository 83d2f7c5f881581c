"""Exception types shared across theta_lab."""


class ThetaLabError(Exception):
    """Base class for all errors raised by theta_lab."""


class DegenerateInputError(ThetaLabError, ValueError):
    """Coincident points, zero-area triangles and similar degeneracies."""


class PreconditionError(ThetaLabError, ValueError):
    """An operation was called outside its stated domain."""


class GeneralPositionError(ThetaLabError, ValueError):
    """The point set violates general position.

    ``indices`` holds the offending point indices so callers (the CLI in
    particular) can report them.
    """

    def __init__(self, message, indices=()):
        super().__init__(message)
        self.indices = tuple(indices)


class InductionError(ThetaLabError, RuntimeError):
    """The inductive path construction could not make progress.

    Raised when a recursion step does not shrink the pair distance. This is a
    counterexample candidate and must never be swallowed.
    """

    def __init__(self, message, pair=None, step=None):
        super().__init__(message)
        self.pair = pair
        self.step = step
