"""Half-edge map of a multi-pointed Heegaard diagram.

Vertices are alpha-beta intersections.  Every half-edge runs along one curve
between consecutive vertices; `nxt` walks the boundary of the face on its left.
A region (component of the complement of the curves) may have several boundary
cycles, so every half-edge also carries the id of the region on its left.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field


class StructuralError(RuntimeError):
    """An invariant of the braid diagram failed; this indicates a construction bug."""


@dataclass
class HalfEdgeSurface:
    n: int  # basepoint pairs
    origin: dict = field(default_factory=dict)
    twin: dict = field(default_factory=dict)
    nxt: dict = field(default_factory=dict)
    curve: dict = field(default_factory=dict)  # ('a', i) or ('b', j)
    forward: dict = field(default_factory=dict)  # True if along the curve orientation
    reg: dict = field(default_factory=dict)
    z: dict = field(default_factory=dict)  # basepoint index -> region id
    w: dict = field(default_factory=dict)
    alphas: list = field(default_factory=list)
    betas: list = field(default_factory=list)
    stabilization: list = field(default_factory=list)  # (alpha-hat, beta-hat) labels
    empty_regions: set = field(default_factory=set)  # regions without boundary (n = 1)
    _ids: itertools.count = field(default_factory=itertools.count)

    # -- construction helpers ------------------------------------------------

    def new_vertex(self):
        return ("v", next(self._ids))

    def new_region(self):
        return ("r", next(self._ids))

    def new_edge(self, u, v, curve, fwd_reg=None, back_reg=None):
        """Create the half-edge pair u -> v (forward along `curve`) and v -> u."""
        h, t = next(self._ids), next(self._ids)
        self.origin[h], self.origin[t] = u, v
        self.twin[h], self.twin[t] = t, h
        self.curve[h] = self.curve[t] = curve
        self.forward[h], self.forward[t] = True, False
        if fwd_reg is not None:
            self.reg[h] = fwd_reg
        if back_reg is not None:
            self.reg[t] = back_reg
        return h, t

    def drop(self, h):
        for d in (self.origin, self.twin, self.nxt, self.curve, self.forward, self.reg):
            d.pop(h, None)

    # -- queries -----------------------------------------------------------------

    def head(self, h):
        return self.origin[self.twin[h]]

    def is_alpha(self, h) -> bool:
        return self.curve[h][0] == "a"

    def cw(self, h):
        """Next half-edge clockwise around origin(h)."""
        return self.nxt[self.twin[h]]

    def straight(self, h):
        """The half-edge continuing h along its curve past head(h)."""
        return self.nxt[self.twin[self.nxt[h]]]

    def vertices(self) -> set:
        return set(self.origin.values())

    def vertex_count(self) -> int:
        return len(self.vertices())

    def edge_count(self) -> int:
        return len(self.origin) // 2

    def faces(self) -> list:
        seen, out = set(), []
        for h in sorted(self.origin):
            if h in seen:
                continue
            cyc, g = [], h
            while g not in seen:
                seen.add(g)
                cyc.append(g)
                g = self.nxt[g]
            out.append(cyc)
        return out

    def regions(self) -> dict:
        """Region id -> list of boundary cycles."""
        out = defaultdict(list)
        for cyc in self.faces():
            out[self.reg[cyc[0]]].append(cyc)
        for r in self.empty_regions:
            out[r] = []
        return dict(out)

    def z_regions(self) -> set:
        return set(self.z.values())

    def w_regions(self) -> set:
        return set(self.w.values())

    def genus(self) -> int:
        chi = self.vertex_count() - self.edge_count()
        chi += sum(2 - len(c) for c in self.regions().values())
        if chi % 2:
            raise StructuralError(f"odd Euler characteristic {chi}")
        return (2 - chi) // 2

    def curve_cycle(self, label) -> list:
        """Forward half-edges of a curve in order."""
        start = min(h for h, c in self.curve.items() if c == label and self.forward[h])
        out, h = [start], self.straight(start)
        while h != start:
            out.append(h)
            h = self.straight(h)
        return out

    def curve_vertices(self, label) -> list:
        return [self.origin[h] for h in self.curve_cycle(label)]

    def intersections(self, a, b) -> list:
        """Vertices where alpha `a` meets beta `b`."""
        on_b = set(self.curve_vertices(b))
        return [v for v in self.curve_vertices(a) if v in on_b]

    def complexity(self) -> tuple:
        return (len(self.alphas) + 1, self.vertex_count())

    # -- checks ------------------------------------------------------------------

    def check(self):
        for h, t in self.twin.items():
            if self.twin[t] != h or t == h:
                raise StructuralError("twin is not a fixed-point-free involution")
        if sorted(self.nxt.values()) != sorted(self.nxt):
            raise StructuralError("next is not a permutation")
        for h in self.origin:
            g = self.nxt[h]
            if self.origin[g] != self.head(h):
                raise StructuralError("face walk is disconnected")
            if self.is_alpha(g) == self.is_alpha(h):
                raise StructuralError("face boundary does not alternate alpha/beta")
            if self.reg[g] != self.reg[h]:
                raise StructuralError("region label changes along a face")
        by_vertex = defaultdict(list)
        for h, v in self.origin.items():
            by_vertex[v].append(h)
        for v, hs in by_vertex.items():
            if len(hs) != 4:
                raise StructuralError(f"vertex {v} has valence {len(hs)}")
        self.genus()

    # -- regions -----------------------------------------------------------------

    def region_shapes(self) -> dict:
        """Region id -> (boundary cycle count, corner count)."""
        return {r: (len(c), sum(map(len, c))) for r, c in self.regions().items()}

    def complement_components(self, family: str) -> list:
        """Regions grouped into components of the complement of the alpha ('a') or beta ('b') curves."""
        parent = {r: r for r in self.regions()}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for h, c in self.curve.items():
            if c[0] != family:
                a, b = find(self.reg[h]), find(self.reg[self.twin[h]])
                if a != b:
                    parent[a] = b
        groups = defaultdict(set)
        for r in parent:
            groups[find(r)].add(r)
        return sorted((sorted(g, key=str) for g in groups.values()), key=str)

    def census(self) -> dict:
        zs = self.z_regions()
        out = {"bigons": 0, "squares": 0, "hexagons": 0, "basepointed": 0, "others": 0}
        for r, (cycles, corners) in self.region_shapes().items():
            if r in zs:
                out["basepointed"] += 1
            elif cycles == 1 and corners in (2, 4, 6):
                out[{2: "bigons", 4: "squares", 6: "hexagons"}[corners]] += 1
            else:
                out["others"] += 1
        return out

    def bad_regions(self) -> list:
        zs = self.z_regions()
        return sorted((r for r, (c, k) in self.region_shapes().items()
                       if r not in zs and (c != 1 or k > 4)), key=str)

    def is_nice(self) -> bool:
        return not self.bad_regions()

    # -- serialization -------------------------------------------------------------

    def to_json(self) -> dict:
        """Vertices, half-edge permutations, curve labels, basepoint regions and genus."""
        def vid(v):
            return f"h{v[1]}" if isinstance(v, tuple) else f"p{v}"

        def rid(r):
            return f"r{r[1]}"

        hs = sorted(self.origin)
        return {
            "genus": self.genus(),
            "complexity": list(self.complexity()),
            "vertices": sorted((vid(v) for v in self.vertices()), key=lambda s: (s[0], int(s[1:]))),
            "alphas": [f"{c}{i}" for c, i in self.alphas],
            "betas": [f"{c}{i}" for c, i in self.betas],
            "halfEdges": [{"id": h, "origin": vid(self.origin[h]), "twin": self.twin[h],
                           "next": self.nxt[h], "curve": "%s%d" % self.curve[h],
                           "forward": self.forward[h], "region": rid(self.reg[h])} for h in hs],
            "z": {str(k): rid(r) for k, r in sorted(self.z.items())},
            "w": {str(k): rid(r) for k, r in sorted(self.w.items())},
        }
