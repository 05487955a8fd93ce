"""stripcut: exact minimum vertical strip partitions of polygons.

Value version: the minimum number of pieces of horizontal width at most one
obtainable with vertical cuts.  Reporting version: a lossless run-length
codeword from which every cut descriptor of one optimal partition can be
reconstructed.  Inputs are convex polygons, simple polygons, or glued
triangle models of self-overlapping polygons.
"""

from stripcut.exact_coords import EpsCoord, Rational, rational
from stripcut.polygon_model import Polygon, GluingModel, CutDescriptor, Codeword

__all__ = [
    "EpsCoord",
    "Rational",
    "rational",
    "Polygon",
    "GluingModel",
    "CutDescriptor",
    "Codeword",
]

__version__ = "0.1.0"
