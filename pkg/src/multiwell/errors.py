"""Exception hierarchy shared across the package.

The CLI maps these onto process exit codes: configuration problems exit
with 2, eigensolver convergence failures with 3, and inverse-design /
bracketing failures with 4.
"""


class MultiwellError(Exception):
    """Base class for all errors raised by this package."""


class GridMismatchError(MultiwellError, ValueError):
    """Two objects live on incompatible grids (length or point count differ)."""


class DegenerateStateError(MultiwellError, ValueError):
    """A wavefunction with zero norm cannot be normalized."""


class GeometryError(MultiwellError, ValueError):
    """A potential geometry is unbuildable (e.g. barriers wider than the box)."""


class DomainError(MultiwellError, ValueError):
    """An argument is outside its mathematical domain (n < 1, bad index, ...)."""


class TruncationError(MultiwellError, ValueError):
    """A state does not live inside the retained eigenbasis."""


class BasisMismatchError(MultiwellError, ValueError):
    """Spectral states built over different eigenbases cannot be combined."""


class InvalidBasisError(MultiwellError, ValueError):
    """An eigenbasis violates an assumption (e.g. non-increasing energies)."""


class ConvergenceError(MultiwellError, RuntimeError):
    """The eigensolver failed its residual check after the iteration cap."""


class DesignError(MultiwellError, RuntimeError):
    """Base class for inverse-design failures (CLI exit code 4)."""


class BracketError(DesignError):
    """The target value is not straddled by the supplied bracket."""


class NonMonotonicError(DesignError):
    """The quantity being inverted is not monotone over the bracket."""


class ConfigError(MultiwellError, ValueError):
    """A scenario configuration is malformed or inconsistent."""
