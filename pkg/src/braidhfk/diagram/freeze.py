"""Turn the cell model into the half-edge map of alpha and beta curves."""

from __future__ import annotations

from collections import defaultdict

from .cells import CellModel, cells_of, is_alpha
from .surface import HalfEdgeSurface, StructuralError

_CCW = {0: "ENWS", 1: "ESWN"}  # D keeps the plane orientation, D' is reversed
_OPP = {"N": "S", "S": "N", "E": "W", "W": "E"}


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def _same_cell(c1, c2):
    return c1[1:] == c2[1:] and (c1[0] == c2[0] or c1[0] is None or c2[0] is None)


def _segment_cell(m, p, q):
    """The cell containing the beta segment between consecutive points p and q."""
    try:
        return m._seg_cells[(p, q)]
    except KeyError:
        raise StructuralError(f"no beta segment {p}-{q}") from None


def _cell_boundary(n, d, half, k):
    """Counterclockwise boundary of a cell as (edge, reversed) entries and the puncture."""
    if half == "U":
        out = [((d, "g", k - 1, 1), False), "P", ((d, "g", k, -1), False)]
        if k <= n - 1:
            out.append(((d, "a", k, 1), False))
        out.append((("T", k), True))
        if k >= 2:
            out.append(((d, "a", k - 1, 1), True))
    else:
        out = [((d, "g", k, -1), True), "P", ((d, "g", k - 1, 1), True)]
        if k >= 2:
            out.append(((d, "a", k - 1, -1), False))
        out.append((("B", k), False))
        if k <= n - 1:
            out.append(((d, "a", k, -1), True))
    return out


def _pieces(m: CellModel, uf: _UnionFind):
    """Union the boundary arcs of every cell into pieces; return lookup tables."""
    seg_arcs = defaultdict(list)
    punct = {}
    for d in (0, 1):
        for half in "UL":
            for k in range(1, m.n + 1):
                cell = (d, half, k)
                tokens = []
                for item in _cell_boundary(m.n, d, half, k):
                    if item == "P":
                        tokens.append(("punct", k))
                        continue
                    e, rev = item
                    pts = m.edges[e]
                    order = range(len(pts) + 1)
                    if rev:
                        order = reversed(order)
                    for j in order:
                        tokens.append(("seg", e, j))
                        nxt_pt = (j - 1) if rev else j
                        if 0 <= nxt_pt < len(pts) and (j > 0 if rev else j < len(pts)):
                            tokens.append(("pt", pts[nxt_pt]))
                pts_at = [t for t, tok in enumerate(tokens) if tok[0] == "pt"]
                if pts_at:
                    s = pts_at[0] + 1
                    tokens = tokens[s:] + tokens[:s]
                arcs, cur = [], []
                point_after = {}
                for tok in tokens:
                    if tok[0] == "pt":
                        arcs.append(cur)
                        point_after[len(arcs) - 1] = tok[1]
                        cur = []
                    else:
                        cur.append(tok)
                if cur or not arcs:
                    arcs.append(cur)
                # arc t is followed by point_after[t]; arc after a point p is index_of[p]
                index_of = {p: (t + 1) % len(arcs) for t, p in point_after.items()}
                for t, p in point_after.items():
                    a, b = m.nxt.get(p), m.prv.get(p)
                    partner = a if a is not None and _same_cell(_segment_cell(m, p, a), cell) else b
                    if partner is None or not _same_cell(_segment_cell(m, p, partner), cell):
                        raise StructuralError(f"no chord at point {p} in cell {cell}")
                    uf.union((cell, t), (cell, index_of[partner]))
                for t, arc in enumerate(arcs):
                    uf.find((cell, t))
                    for tok in arc:
                        if tok[0] == "seg":
                            seg_arcs[tok[1:]].append((cell, t))
                        else:
                            punct[(d, half, tok[1])] = (cell, t)
    for (e, j), arcs in seg_arcs.items():
        if not is_alpha(e):
            for a in arcs[1:]:
                uf.union(arcs[0], a)
    return seg_arcs, punct


def freeze(m: CellModel) -> HalfEdgeSurface:
    n = m.n
    S = HalfEdgeSurface(n)
    uf = _UnionFind()
    m._seg_cells = m.segment_cells()
    seg_arcs, punct = _pieces(m, uf)
    S.alphas = [("a", i) for i in range(1, n)]
    S.betas = [("b", j) for j in range(1, n)]
    disk = {p: m.edge_of[p][0] for p, e in m.edge_of.items() if is_alpha(e)}
    he = {}

    def beta_dir(p, q):
        d, _, i, s = m.edge_of[p]
        c = _segment_cell(m, p, q)
        return "E" if c[2] == i + 1 else "W"

    # alpha curves: down through D, then up through D'
    for i in range(1, n):
        seq = (m.edges[(0, "a", i, 1)][::-1] + m.edges[(0, "a", i, -1)]
               + m.edges[(1, "a", i, -1)][::-1] + m.edges[(1, "a", i, 1)])
        for k, p in enumerate(seq):
            q = seq[(k + 1) % len(seq)]
            h, t = S.new_edge(p, q, ("a", i))
            he[(p, "S" if disk[p] == 0 else "N")] = h
            he[(q, "N" if disk[q] == 0 else "S")] = t
    for j in range(1, n):
        cyc, p = [], m.top[j]
        while True:
            cyc.append(p)
            p = m.nxt[p]
            if p == m.top[j]:
                break
        seq = [p for p in cyc if p in disk]
        for k, p in enumerate(seq):
            q = seq[(k + 1) % len(seq)]
            h, t = S.new_edge(p, q, ("b", j))
            fwd, back = beta_dir(p, m.nxt[p]), beta_dir(q, m.prv[q])
            if (p, fwd) in he or (q, back) in he:
                raise StructuralError(f"beta crosses alpha twice from one side at {p}")
            he[(p, fwd)] = h
            he[(q, back)] = t
    where = {h: key for key, h in he.items()}
    for h in he.values():
        t = S.twin[h]
        v, dirn = where[t]
        ring = _CCW[disk[v]]
        S.nxt[h] = he[(v, ring[(ring.index(dirn) - 1) % 4])]
    # regions
    label = {}
    for h, (p, dirn) in where.items():
        if dirn not in "NS":
            continue
        e = m.edge_of[p]
        d, _, i, s = e
        outward = "N" if s > 0 else "S"
        j = m.pos(p) + 1 if dirn == outward else m.pos(p)
        left_east = (dirn == "S") if d == 0 else (dirn == "N")
        half = "U" if s > 0 else "L"
        cell = (d, half, i + 1 if left_east else i)
        arc = next(a for a in seg_arcs[(e, j)] if a[0] == cell)
        label[h] = uf.find(arc)
    rid = {}
    for cyc in S.faces():
        roots = {label[h] for h in cyc if h in label}
        if len(roots) != 1:
            raise StructuralError("face meets several regions")
        root = roots.pop()
        rid.setdefault(root, S.new_region())
        for h in cyc:
            S.reg[h] = rid[root]
    for k in range(1, n + 1):
        for d, table in ((0, S.z), (1, S.w)):
            root = uf.find(punct[(d, "U", k)])
            if root not in rid:
                rid[root] = S.new_region()
                S.empty_regions.add(rid[root])
            table[k] = rid[root]
    S.check()
    return S
