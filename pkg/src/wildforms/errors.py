"""Exception types raised across the package."""

from __future__ import annotations


class WildformsError(Exception):
    """Base class for every error raised by this package."""


class FieldError(WildformsError, ValueError):
    """Invalid field specification or element."""


class Singular(WildformsError, ArithmeticError):
    """A matrix that had to be invertible is not."""


class SizeMismatch(WildformsError, ValueError):
    pass


class ArityMismatch(WildformsError, ValueError):
    pass


class InvalidEpsilon(WildformsError, ValueError):
    pass


class NotSkew(WildformsError, ValueError):
    pass


class SingularMobius(WildformsError, ValueError):
    pass


class LinearlyDependent(WildformsError, ValueError):
    pass


class MixedSymmetryTypes(WildformsError, ValueError):
    pass


class RadicalCubeNonzero(WildformsError, ValueError):
    pass


class NotHomogeneousSymmetry(WildformsError, ValueError):
    pass


class NotCommutative(WildformsError, ValueError):
    pass


class WrongCommutatorDim(WildformsError, ValueError):
    pass


class NotLie(WildformsError, ValueError):
    pass


class NonSplitting(WildformsError, ValueError):
    """Eigenvalue data does not split into linear factors over the field."""


class UnrealizableLabel(WildformsError, ValueError):
    pass


class NotPrimeField(WildformsError, ValueError):
    pass


class DeskScaleExceeded(WildformsError, RuntimeError):
    """An exhaustive search would exceed the configured enumeration budget."""
