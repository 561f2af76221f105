"""Exact sign-definiteness tests for the Abel coefficients of planar quadratic systems."""

from .qnum import QNum, parse_qnum
from .poly import UPoly
from .model import Params

__version__ = "0.1.0"

__all__ = ["QNum", "UPoly", "Params", "parse_qnum", "__version__"]
