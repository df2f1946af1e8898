"""knotforge: exact knot invariants, twist moves and finite-type probes."""

__version__ = "0.1.0"

from knotforge.algebra import IntMatrix, LaurentPoly, TruncatedSeries
from knotforge.diagram import Diagram, TwistRegion

__all__ = ["Diagram", "IntMatrix", "LaurentPoly", "TruncatedSeries", "TwistRegion", "__version__"]
