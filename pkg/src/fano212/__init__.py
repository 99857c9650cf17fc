"""Exact symbolic toolkit for cyclic symmetries of triples of (1,1)-divisors
in P3 x P3 and the character theory of their determinantal plane quartics."""

__version__ = "0.1.0"
