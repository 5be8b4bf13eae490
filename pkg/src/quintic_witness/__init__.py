"""Exact certificates for a nodal plane cubic on a smooth quintic threefold."""
from __future__ import annotations

from .kernels import BACKEND
from .poly import BinaryForm, MultiPoly, parse_poly

__version__ = "0.1.0"

__all__ = ["BACKEND", "BinaryForm", "MultiPoly", "parse_poly", "__version__"]
