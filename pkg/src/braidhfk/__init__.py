"""Knot Floer homology of braid closures over GF(2), from nice braid Heegaard diagrams."""

from .braid import BraidParseError, BraidWord, parse_braid
from .floer import FloerResult, UnsupportedFlavor, compute

__all__ = ["BraidParseError", "BraidWord", "FloerResult", "UnsupportedFlavor", "compute", "parse_braid"]
__version__ = "0.1.0"
