"""Exception types shared across the package.

All domain errors derive from NsurfError so the command-line driver can
distinguish them (exit code 1, structured report) from genuine bugs.
"""


class NsurfError(ValueError):
    """Base class for all domain errors raised by this package."""


class TriangulationError(NsurfError):
    """Malformed gluing file or inconsistent gluing table."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = "line %d: %s" % (line, message)
        NsurfError.__init__(self, message)


class OrientabilityError(NsurfError):
    """Raised when an operation that needs an orientable (or oriented)
    triangulation receives one flagged non-orientable."""


class CoordinateError(NsurfError):
    """Vector has the wrong length, a negative entry, or violates the
    constraints of the requested coordinate system."""


class InconsistentWeightsError(CoordinateError):
    """Edge-weight representatives disagree; the vector does not satisfy
    the matching equations."""


class IncompatibleVectorsError(CoordinateError):
    """Geometric sum undefined: different quadrilateral or octagon kinds
    in some tetrahedron, or too many octagons in total."""

    def __init__(self, message, tet=None):
        self.tet = tet
        NsurfError.__init__(self, message)


class GuardExceededError(NsurfError):
    """A hard size guard was hit (brute-force enumeration or search caps)."""


class BoundaryStructureError(NsurfError):
    """The boundary is not a single one-vertex torus, so slope coordinates
    are undefined."""


class SlopeError(NsurfError):
    """Curve system has no well-defined slope (mixed classes, or every
    component null-homotopic)."""


class MorseWordError(NsurfError):
    """Malformed Morse word: bad position, negative strand count, nonzero
    ends, or more than one vertex event."""


class DependentEventsError(NsurfError):
    """Requested commutation of two events whose strand ranges interact."""
