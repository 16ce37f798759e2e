"""Exception types shared across the package."""


class OptofluxError(Exception):
    """Base class for all package-specific errors."""


class SingularMatrix(OptofluxError):
    """Dense elimination met a pivot too small to trust.

    Happens only when some total decay rate is zero and the probe sits on an
    undamped resonance; every strictly lossy system is safely invertible.
    """


class DegenerateBlock(SingularMatrix):
    """A closed-form block determinant vanished (zero-damping edge case)."""


class ZeroCoupling(OptofluxError):
    """The requested quantity needs a nonzero optical bridge (J, G_L, G_R)."""


class NoSolution(OptofluxError):
    """The inverse drive problem is singular for the given phases."""


class ConfigError(OptofluxError):
    """A scenario file or command-line override failed validation."""
