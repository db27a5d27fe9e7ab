"""End-to-end construction of the nice braid diagram."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..braid import BraidWord, closure_structure
from .cells import CellModel
from .freeze import freeze
from .stabilize import stabilize_hexagons
from .surface import HalfEdgeSurface, StructuralError

DEFAULT_VERTEX_LIMIT = 10**6


@dataclass
class TraceStep:
    letter: tuple
    gamma: int  # beta points on gamma_i before the twist
    v_before: int
    v_after: int
    counters: dict


@dataclass
class HeegaardDiagram:
    word: BraidWord
    surface: HalfEdgeSurface
    trace: list = field(default_factory=list)
    pre_census: dict = field(default_factory=dict)
    pre_complexity: tuple = (0, 0)
    cells: CellModel | None = None

    @property
    def n(self) -> int:
        return self.word.strands

    @property
    def genus(self) -> int:
        return self.surface.genus()

    def complexity(self) -> tuple:
        return self.surface.complexity()

    def is_nice(self) -> bool:
        return self.surface.is_nice()

    def component_of(self) -> dict:
        """Basepoint index -> link component index."""
        cs = closure_structure(self.word)
        return {k: cs.component_of(k) for k in range(1, self.n + 1)}


def base_diagram(n: int) -> "HeegaardDiagram":
    """Diagram of the trivial braid on n strands (the n-pointed unknot diagram for n = 1)."""
    return build_diagram(BraidWord(n, ()))


def twisted_cells(w: BraidWord, vertex_limit: int = DEFAULT_VERTEX_LIMIT):
    m = CellModel.base(w.strands, vertex_limit=vertex_limit)
    trace = []
    for i, s in w.letters:
        g, v = m.gamma(i), m.vertex_count()
        m.half_twist(i, s)
        trace.append(TraceStep((i, s), g, v, m.vertex_count(), m.counters()))
    return m, trace


def build_diagram(w: BraidWord, vertex_limit: int = DEFAULT_VERTEX_LIMIT,
                  stabilize: bool = True) -> HeegaardDiagram:
    m, trace = twisted_cells(w, vertex_limit)
    S = freeze(m)
    d = HeegaardDiagram(w, S, trace, S.census(), S.complexity(), m)
    check_structure(d)
    if stabilize:
        stabilize_hexagons(S)
    return d


def check_structure(d: HeegaardDiagram):
    """Region shapes and basepoint placement of an unstabilized braid diagram."""
    S = d.surface
    census = S.census()
    if census["others"]:
        raise StructuralError(f"region with eight or more corners: {census}")
    if census["hexagons"] > max(d.n - 2, 0):
        raise StructuralError(f"{census['hexagons']} hexagons on {d.n} strands")
    shapes = S.region_shapes()
    for fam in "ab":
        for comp in S.complement_components(fam):
            zs = [k for k, r in S.z.items() if r in comp]
            ws = [k for k, r in S.w.items() if r in comp]
            if len(zs) != 1 or len(ws) != 1:
                raise StructuralError(f"complement component with z={zs} w={ws}")
            hexes = [r for r in comp if shapes[r] == (1, 6) and r not in S.z_regions()]
            if len(hexes) > 1:
                raise StructuralError("two hexagons in one annulus")


def apply_half_twist(m: CellModel, i: int, sign: int) -> CellModel:
    """Twist the beta curves along gamma_i and remove the trivial bigons it creates."""
    m.half_twist(i, sign)
    return m


def remove_trivial_bigons(m: CellModel) -> CellModel:
    m.normalize()
    return m


def classify_regions(d: HeegaardDiagram) -> dict:
    """Census of the unstabilized regions; raises StructuralError on a bad shape."""
    check_structure(d)
    return dict(d.pre_census)
