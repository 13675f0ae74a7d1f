"""Plane spanners of maximum degree 4 built from the L-infinity Delaunay triangulation."""
from .errors import SpannerError
from .geometry import Metric, PointSet
from .spanner import Construction, construct

__all__ = ["Construction", "Metric", "PointSet", "SpannerError", "construct"]
__version__ = "0.1.0"
