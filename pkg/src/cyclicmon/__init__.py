"""Exact Hochschild and cyclic cohomology of algebras in Rep(G) and Vec_G
with coefficients in symmetric Hom-type contratraces."""

__version__ = "0.1.0"
