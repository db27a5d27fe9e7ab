"""Construction-time model of the braid diagram.

The two disks D (disk 0, carries z) and D' (disk 1, carries w) are cut by the
real line and the vertical lines x = i + 1/2 into cells.  Every cell edge keeps
the ordered list of beta crossing points on it; beta arcs are doubly linked
lists of points.  Half-twists act on D' only.

Edge keys:
  (d, 'a', i, s)  upper (s=+1) or lower (s=-1) half of alpha_i in disk d,
                  points listed from the corner (i+1/2, 0) outward;
  (d, 'g', k, s)  left (s=-1) or right (s=+1) half of gamma_k, listed left to right;
  ('T', k), ('B', k)  boundary arcs above U_k / below L_k, shared by both disks.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class GuardrailError(RuntimeError):
    """The diagram grew past the configured vertex limit."""


def is_line(e) -> bool:
    return len(e) == 4 and e[1] == "g"


def is_alpha(e) -> bool:
    return len(e) == 4 and e[1] == "a"


def cells_of(e, n):
    """The (at most two) cells adjacent to an edge; a cell is (disk, 'U'|'L', k)."""
    if len(e) == 2:
        kind, k = e
        return ((None, "U" if kind == "T" else "L", k),)
    d, kind, idx, s = e
    if kind == "a":
        half = "U" if s > 0 else "L"
        return ((d, half, idx), (d, half, idx + 1))
    k = idx if s < 0 else idx + 1
    return ((d, "U", k), (d, "L", k))


@dataclass
class CellModel:
    n: int
    edges: dict = field(default_factory=dict)
    edge_of: dict = field(default_factory=dict)
    nxt: dict = field(default_factory=dict)
    prv: dict = field(default_factory=dict)
    # beta_j (j = 1..n-1): endpoints on the boundary and the D-arc start
    top: dict = field(default_factory=dict)
    bottom: dict = field(default_factory=dict)
    arc_start: dict = field(default_factory=dict)
    _next_id: int = 0
    vertex_limit: int = 10**6

    # -- basic bookkeeping --------------------------------------------------

    def _new(self, e):
        p = self._next_id
        self._next_id += 1
        self.edge_of[p] = e
        return p

    def pos(self, p) -> int:
        return self.edges[self.edge_of[p]].index(p)

    def _unlink(self, p):
        self.edges[self.edge_of[p]].remove(p)
        del self.edge_of[p], self.nxt[p], self.prv[p]

    def _chain(self, pts):
        for a, b in zip(pts, pts[1:]):
            self.nxt[a] = b
            self.prv[b] = a

    @classmethod
    def base(cls, n: int, vertex_limit: int = 10**6) -> CellModel:
        if n < 1:
            raise ValueError("need at least one strand")
        m = cls(n, vertex_limit=vertex_limit)
        for k in range(1, n + 1):
            m.edges[("T", k)] = []
            m.edges[("B", k)] = []
        for d in (0, 1):
            for i in range(1, n):
                m.edges[(d, "a", i, 1)] = []
                m.edges[(d, "a", i, -1)] = []
            for k in range(1, n + 1):
                m.edges[(d, "g", k, -1)] = []
            for k in range(0, n):
                m.edges[(d, "g", k, 1)] = []
        for j in range(1, n):
            t, b = m._new(("T", j + 1)), m._new(("B", j))
            m.edges[("T", j + 1)].append(t)
            m.edges[("B", j)].append(b)
            m.top[j], m.bottom[j] = t, b
            arcs = []
            for d in (0, 1):
                pa, pg = m._new((d, "a", j, 1)), m._new((d, "g", j, -1))
                m.edges[(d, "a", j, 1)].append(pa)
                m.edges[(d, "g", j, -1)].append(pg)
                arcs.append([pa, pg])
            # the D arc runs top -> bottom, the D' arc bottom -> top
            m.arc_start[j] = arcs[0][0]
            m.nxt[t] = arcs[0][0]
            m._chain(arcs[0] + [b] + arcs[1][::-1] + [t])
            m.prv[arcs[0][0]] = t
        return m

    # -- counters -------------------------------------------------------------

    def count(self, e) -> int:
        return len(self.edges.get(e, ()))

    def gamma(self, i) -> int:
        return self.count((1, "g", i, -1)) + self.count((1, "g", i, 1))

    def alpha_count(self, i) -> int:
        return self.count((1, "a", i, 1)) + self.count((1, "a", i, -1))

    def vertex_count(self) -> int:
        return sum(len(v) for e, v in self.edges.items() if is_alpha(e))

    def counters(self) -> dict:
        out = {}
        for i in range(1, self.n):
            out[f"A{i}+"] = self.count((1, "a", i, 1))
            out[f"A{i}-"] = self.count((1, "a", i, -1))
        for k in range(1, self.n):
            out[f"G{k}-"] = self.count((1, "g", k, -1))
            out[f"G{k}+"] = self.count((1, "g", k, 1))
        return out

    # -- the D' arcs ------------------------------------------------------------

    def dprime_arc(self, j) -> list:
        """Points of b'_j from the top boundary point down to the bottom one."""
        out, p = [], self.top[j]
        while True:
            out.append(p)
            if p == self.bottom[j]:
                return out
            p = self.prv[p]

    def segment_cells(self) -> dict:
        """Cell of every beta segment, keyed by both orderings of its end points."""
        out = {}
        for j in range(1, self.n):
            upper, p = True, self.top[j]
            while True:
                q = self.nxt[p]
                half = "U" if upper else "L"
                cands = [c for c in cells_of(self.edge_of[p], self.n) if c[1] == half]
                cq = [c for c in cells_of(self.edge_of[q], self.n) if c[1] == half]
                hit = [c for c in cands if any(c[1:] == d[1:] for d in cq)]
                if len(hit) != 1:
                    raise AssertionError(f"cannot place beta segment {p}-{q}")
                c = hit[0]
                if c[0] is None:
                    c = next(d for d in cq if d[1:] == c[1:])
                out[(p, q)] = out[(q, p)] = c
                if q == self.top[j]:
                    break
                e = self.edge_of[q]
                if is_line(e):
                    upper = not upper
                p = q
        return out

    def _moving_down(self):
        """For every D' line point, whether its arc crosses it top -> bottom."""
        down = {}
        for j in range(1, self.n):
            upper = True
            for p in self.dprime_arc(j)[1:-1]:
                if is_line(self.edge_of[p]):
                    down[p] = upper
                    upper = not upper
        return down

    # -- half-twists ------------------------------------------------------------

    def half_twist(self, i: int, sign: int):
        if not 1 <= i <= self.n - 1:
            raise IndexError(f"twist index {i} out of range")
        gm, gp = (1, "g", i, -1), (1, "g", i, 1)
        L, R = (1, "g", i - 1, 1), (1, "g", i + 1, -1)
        ap, am = (1, "a", i, 1), (1, "a", i, -1)
        left, right = self.edges[gm], self.edges[gp]
        if not left and not right:
            raise AssertionError(f"gamma_{i} carries no beta points")
        down = self._moving_down()
        strands = [(k - len(left), p) for k, p in enumerate(left)]
        strands += [(k + 1, p) for k, p in enumerate(right)]
        if sign > 0:
            pat = {-1: (L, am, "mid", R, am), 1: (ap, L, "mid", ap, R)}
            double_up = 1
        else:
            pat = {1: (R, am, "mid", L, am), -1: (ap, R, "mid", ap, L)}
            double_up = -1
        new = {}
        for u, p in strands:
            s = 1 if u > 0 else -1
            mid = gm if u > 0 else gp
            new[u] = [self._new(mid if e == "mid" else e) for e in pat[s]]
        # reroute the arcs
        for u, p in strands:
            # linked order runs bottom -> top inside D'
            pts = new[u][::-1] if down[p] else new[u]
            a, b = self.prv[p], self.nxt[p]
            self._chain([a] + pts + [b])
            del self.nxt[p], self.prv[p], self.edge_of[p]
        by_u = sorted(new)
        # positions of each new point in its pattern
        idx = {e: [k for k, x in enumerate(pat[1]) if x == e] for e in (L, R, ap, am)}
        idx_m = {e: [k for k, x in enumerate(pat[-1]) if x == e] for e in (L, R, ap, am)}

        def where(u, e):
            return (idx if u > 0 else idx_m)[e]

        self.edges[L] = self.edges[L] + [new[u][where(u, L)[0]] for u in by_u]
        self.edges[R] = [new[u][where(u, R)[0]] for u in by_u] + self.edges[R]
        self.edges[gm] = [new[u][2] for u in sorted((u for u in by_u if u > 0), reverse=True)]
        self.edges[gp] = [new[u][2] for u in sorted((u for u in by_u if u < 0), reverse=True)]
        up = sorted((u for u in by_u if u * double_up > 0), key=abs)
        lo = sorted((u for u in by_u if u * double_up < 0), key=abs)
        self.edges[ap] = ([new[u][where(u, ap)[1]] for u in up]
                          + [new[u][where(u, ap)[0]] for u in reversed(up)]
                          + self.edges[ap])
        self.edges[am] = ([new[u][where(u, am)[0]] for u in lo]
                          + [new[u][where(u, am)[1]] for u in reversed(lo)]
                          + self.edges[am])
        self.normalize()
        if self.vertex_count() > self.vertex_limit:
            raise GuardrailError(f"vertex count exceeds limit {self.vertex_limit}")

    # -- trivial bigons ---------------------------------------------------------

    def _corner_edges(self, i):
        # counterclockwise around (i + 1/2, 0): east, north, west, south
        return [(1, "g", i, 1), (1, "a", i, 1), (1, "g", i, -1), (1, "a", i, -1)]

    def _nearest(self, e):
        lst = self.edges[e]
        if not lst:
            return None
        return lst[-1] if e[1] == "g" and e[3] < 0 else lst[0]

    def _try_edge_bigon(self, p):
        q = self.nxt.get(p)
        if q is None:
            return None
        e = self.edge_of[p]
        if len(e) != 4 or e[0] != 1 or self.edge_of[q] != e:
            return None
        if abs(self.pos(p) - self.pos(q)) != 1:
            return None
        a, b = self.prv[p], self.nxt[q]
        lst = self.edges[e]
        k = min(self.pos(p), self.pos(q))
        touched = [a, b] + lst[max(k - 1, 0):k] + lst[k + 2:k + 3]
        self._unlink(p)
        self._unlink(q)
        self._chain([a, b])
        return touched

    def _try_corner(self, p2):
        e2 = self.edge_of.get(p2)
        if e2 is None or len(e2) != 4 or e2[0] != 1:
            return None
        p1, p3 = self.prv.get(p2), self.nxt.get(p2)
        if p1 is None or p3 is None:
            return None
        for c in (e2[2],):
            if not 1 <= c <= self.n - 1:
                continue
            ring = self._corner_edges(c)
            if e2 not in ring:
                continue
            k2 = ring.index(e2)
            e1, e3 = self.edge_of[p1], self.edge_of[p3]
            for step in (1, -1):
                if e1 == ring[(k2 - step) % 4] and e3 == ring[(k2 + step) % 4]:
                    break
            else:
                continue
            if any(self._nearest(e) != p for e, p in ((e1, p1), (e2, p2), (e3, p3))):
                continue
            e4 = ring[(k2 + 2 * step) % 4]
            a, b = self.prv[p1], self.nxt[p3]
            touched = [a, b]
            for p in (p1, p2, p3):
                e = self.edge_of[p]
                lst = self.edges[e]
                k = lst.index(p)
                touched += lst[max(k - 1, 0):k] + lst[k + 1:k + 2]
                self._unlink(p)
            r = self._new(e4)
            if e4[1] == "g" and e4[3] < 0:
                self.edges[e4].append(r)
            else:
                self.edges[e4].insert(0, r)
            touched.append(r)
            self._chain([a, r, b])
            return [t for t in touched if t not in (p1, p2, p3)]
        return None

    def normalize(self):
        """Remove trivial bigons in D' (beta against alpha or gamma) until none remain."""
        work = [p for p, e in self.edge_of.items() if len(e) == 4 and e[0] == 1]
        while work:
            p = work.pop()
            if p not in self.edge_of:
                continue
            for q in (self.prv.get(p), p, self.nxt.get(p)):
                if q is None or q not in self.edge_of:
                    continue
                touched = self._try_edge_bigon(q) or self._try_corner(q)
                if touched:
                    work.extend(touched)
                    work.extend(x for t in touched if t in self.nxt
                                for x in (self.nxt[t], self.prv[t]))
                    break
