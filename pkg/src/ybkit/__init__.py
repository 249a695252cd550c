"""Construction and numerical verification of six-vertex, sl(m,n) and chiral Potts R-matrices."""

__version__ = "0.1.0"
