"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class GluedKnotError(Exception):
    """Base class for every error raised by this package."""


# -- geometry ---------------------------------------------------------------

class Coplanar(GluedKnotError):
    """Two ellipses (or an ellipse and a plane) lie in the same plane."""


class OffPlane(GluedKnotError):
    """A query point does not lie in the plane of the ellipse."""


class Degenerate(GluedKnotError):
    """Tangential or otherwise non-transversal contact within tolerance."""


class NotDisjoint(GluedKnotError):
    """Curves expected to be disjoint actually meet."""


class PreconditionViolated(GluedKnotError):
    """Caller handed in data that breaks a documented precondition."""


# -- configurations ---------------------------------------------------------

class NotATree(GluedKnotError):
    """The gluing graph has a cycle or is disconnected."""


class UnexpectedIntersection(GluedKnotError):
    """A pair of ellipses meets in the wrong number of points."""

    def __init__(self, i: int, j: int, count: int):
        super().__init__(f"ellipses {i} and {j} intersect in {count} points")
        self.i, self.j, self.count = i, j, count


class MissingGluePoint(GluedKnotError):
    """A glued pair does not actually touch."""

    def __init__(self, i: int, j: int):
        super().__init__(f"ellipses {i} and {j} are glued but do not meet")
        self.i, self.j = i, j


class InternalInconsistency(GluedKnotError):
    """Validated input produced an impossible state; indicates a tolerance failure."""


class PerturbationTooLarge(GluedKnotError):
    """Pulling glued ellipses apart created a new intersection."""


class NonGenericDirection(GluedKnotError):
    """A sweep direction produced a multiple or tangential first touch."""


class MaxRetriesExceeded(GluedKnotError):
    """Random search exhausted its retry budget."""


# -- projection & diagrams --------------------------------------------------

class NonGenericProjection(GluedKnotError):
    """Projection direction hits a tangency, triple point, or edge-on ellipse."""


class TooManyCrossings(GluedKnotError):
    """Diagram exceeds the crossing cap of a polynomial algorithm."""


class SingularPresentation(GluedKnotError):
    """Alexander matrix minor was singular for every struck row/column."""
