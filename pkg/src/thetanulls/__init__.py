"""Theta characteristics over GF(2): symplectic linear algebra, quadratic
form orbits, hyperelliptic and bi-elliptic combinatorial models, certified
Siegel theta constants, and an exact transversality check."""

__version__ = "0.1.0"
