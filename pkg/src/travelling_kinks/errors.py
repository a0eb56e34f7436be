"""Exception types shared across the package."""


class InvalidParameter(ValueError):
    """A numeric argument lies outside the operation's domain."""


class PoleError(ArithmeticError):
    """The inverse-method nonlinearity was evaluated at its pole."""


class Unsupported(NotImplementedError):
    """The requested quantity has no closed form for this model."""


class NumericalFailure(RuntimeError):
    """Base class for failures of an integration or shooting run."""


class NoCrossing(NumericalFailure):
    """The integration budget was exhausted before the level was crossed."""


class BlowUp(NumericalFailure):
    """The trajectory left the admissible region."""


class NoRealLattice(NumericalFailure, InvalidParameter):
    """Inverse-method parameters give a non-positive squared lattice step."""
