"""Exact computational laboratory for simultaneous Diophantine approximation.

The package traces the successive-minima functions of the parametric convex
bodies attached to a point on a Veronese curve, estimates the four classical
exponent families from witness events, and evaluates a registry of
transference inequalities over exact rational / quadratic-surd arithmetic.
"""

from pgnlab.exact import Surd, RatInterval, INF, parse_exact, format_exact

__all__ = ["Surd", "RatInterval", "INF", "parse_exact", "format_exact"]

__version__ = "0.1.0"
