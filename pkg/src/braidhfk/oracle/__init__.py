"""Independent cross-checks: grid diagram homology and the Burau Alexander polynomial."""

from .burau import Laurent, alexander_from_burau
from .compare import Report, compare, mirror_ranks
from .grid import (GridDiagram, golden, grid_hfk, grid_minus_towers, grid_tilde, load_fixture,
                   torus_grid)

__all__ = [
    "GridDiagram", "Laurent", "Report", "alexander_from_burau", "compare", "golden", "grid_hfk",
    "grid_minus_towers", "grid_tilde", "load_fixture", "mirror_ranks", "torus_grid",
]
