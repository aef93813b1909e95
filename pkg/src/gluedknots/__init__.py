"""Knots glued from oriented ellipses in 3-space.

Construction of preglued configurations, smoothing into closed curves,
generic projection to combinatorial diagrams, classical invariants, and
randomized verification suites for the quantitative statements about this
class of knots.
"""

from .errors import GluedKnotError
from .geom3 import Ellipse, Tolerances, circle, classify_pair, linking_number
from .laurent import LaurentPoly

__version__ = "0.1.0"

__all__ = [
    "Ellipse",
    "GluedKnotError",
    "LaurentPoly",
    "Tolerances",
    "circle",
    "classify_pair",
    "linking_number",
    "__version__",
]
