"""Exception types raised across the package.

Everything derives from :class:`LinkmorseError` (a ``ValueError``) so callers
can catch the whole family with one clause while tests distinguish the
specific failure modes.
"""


class LinkmorseError(ValueError):
    """Base class for all linkmorse errors."""


class InvalidLinkageError(LinkmorseError):
    """Edge-length vector violates positivity or closability."""


class InvalidConfigurationError(LinkmorseError):
    """Vertex list is malformed or does not describe a usable configuration."""


class DegenerateCircleError(LinkmorseError):
    """The first three vertices are collinear; no circumcircle exists."""


class NotInscribableError(LinkmorseError):
    """An edge is longer than the circle diameter, so no chord realizes it."""


class CentralConfigurationError(LinkmorseError):
    """An edge or chord passes through the circle center (a diameter).

    Orientation signs are undefined there and the half-angle tangent blows up.
    The optional ``index`` records the offending edge or subconfiguration.
    """

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class SolverDomainError(LinkmorseError):
    """Radius below the minimum circumradius max(l_i)/2."""


class SingularDerivativeError(LinkmorseError):
    """Radius derivative undefined because some edge is a diameter."""


class InconsistentDescriptorError(LinkmorseError):
    """Cyclic descriptor violates the angular closure condition."""


class NonGenericError(LinkmorseError):
    """A sign quantity sits on its degeneracy boundary (e.g. delta near zero)."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class VanishingChordError(LinkmorseError):
    """A subconfiguration closing chord has (numerically) zero length."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class NonRegularPointError(LinkmorseError):
    """Constraint Jacobian is rank deficient; the moduli space is singular here."""


class NonGenericPathError(LinkmorseError):
    """Two deformation events coincide within the path resolution."""
