"""Braid Heegaard diagrams: construction, bigon removal, stabilization, niceness."""

from .build import (HeegaardDiagram, apply_half_twist, base_diagram, build_diagram, check_structure,
                    classify_regions, remove_trivial_bigons, twisted_cells)
from .cells import CellModel, GuardrailError
from .stabilize import finger_move, stabilize_hexagons, stabilize_region
from .surface import HalfEdgeSurface, StructuralError

__all__ = [
    "CellModel", "GuardrailError", "apply_half_twist", "classify_regions", "remove_trivial_bigons", "HalfEdgeSurface", "HeegaardDiagram", "StructuralError",
    "base_diagram", "build_diagram", "check_structure", "finger_move", "stabilize_hexagons",
    "stabilize_region", "twisted_cells",
]
