"""Exact graph and matroid polynomials: Potts, Tutte, chromatic, flow,
characteristic and order polynomials, with the σ/w/τ bases of χ."""

from __future__ import annotations

__version__ = "0.1.0"

from .exactpoly import BiPoly, Poly
from .multigraph import Digraph, Multigraph
from .report import IdentityReport

__all__ = ["BiPoly", "Digraph", "IdentityReport", "Multigraph", "Poly", "__version__"]
