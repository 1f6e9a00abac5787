"""Type-D quiver representations and their tagged-segment model on a punctured polygon."""

from .geometry_model import Segment, polygon_d
from .quiver_core import REFERENCE_DIRS, quiver_a, quiver_d

__all__ = ["REFERENCE_DIRS", "Segment", "polygon_d", "quiver_a", "quiver_d"]
__version__ = "0.1.0"
