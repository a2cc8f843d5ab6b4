# src/models/__init__.py
"""
Exact value types: rational functions in q, polynomials in x over Q(q)
and truncated power series
"""

from .exactnum import BigRational, QPoly, QRatFunc, q_number, eval_at_q
from .xpoly import XPoly
from .powerseries import RATFUNCS, RATIONALS, XPOLYS, FormalSeries, Ring

__all__ = [
    "BigRational",
    "QPoly",
    "QRatFunc",
    "q_number",
    "eval_at_q",
    "XPoly",
    "Ring",
    "RATIONALS",
    "RATFUNCS",
    "XPOLYS",
    "FormalSeries",
]
