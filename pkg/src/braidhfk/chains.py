"""Generators, the incidence operator, connecting domains and gradings.

Everything here is exact: region and vertex vectors are over the rationals,
and the left inverses are stored as integer matrices over a common denominator.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import flint
import numpy as np

from .diagram import GuardrailError, HeegaardDiagram, StructuralError

DEFAULT_GENERATOR_CAP = 2_000_000


@dataclass(frozen=True, order=True)
class Generator:
    """One intersection point on every alpha curve, with distinct beta curves."""

    vertices: tuple  # vertex ids, ordered like the diagram's alpha list

    def __len__(self):
        return len(self.vertices)


def vertex_key(v):
    """Sort key for vertex ids: braid points are ints, handle points are tuples."""
    return (1, v[1]) if isinstance(v, tuple) else (0, v)


def _frac(q) -> Fraction:
    q = flint.fmpq(q)
    return Fraction(int(q.p), int(q.q))


class _Scaled:
    """Integer matrix with a common denominator, applied to sparse vectors."""

    def __init__(self, mat: flint.fmpq_mat):
        num, den = mat.numer_denom()
        rows = num.tolist()
        big = max((abs(int(x)) for r in rows for x in r), default=0) > 2**40
        dtype = object if big else np.int64
        self.num = np.array([[int(x) for x in r] for r in rows], dtype=dtype).reshape(
            mat.nrows(), mat.ncols())
        self.den = int(den)

    def apply(self, coeffs: dict) -> np.ndarray:
        """Numerator of mat @ v for a sparse v given as {column: integer}."""
        out = np.zeros(self.num.shape[0], dtype=self.num.dtype)
        for j, c in coeffs.items():
            if c:
                out = out + c * self.num[:, j]
        return out


def _fmpq(c):
    c = Fraction(c)
    return flint.fmpq(c.numerator, c.denominator)


def _rref_pivots(R, rank, ncols) -> list:
    pivots, i = [], 0
    for j in range(ncols):
        if i < rank and R[i, j] != 0:
            pivots.append(j)
            i += 1
    return pivots


def _particular_solver(rows: list, ncols: int):
    """Solution operator and kernel basis for a consistent system given by rows.

    Returns (L, kernel, free): L maps a right-hand side in the image to the
    solution vanishing on the free columns; kernel[i] is 1 on free[i] and 0
    on the other free columns.
    """
    m = len(rows)
    if ncols == 0:
        return flint.fmpq_mat(0, m), [], []
    A = flint.fmpq_mat(m, ncols, [x for r in rows for x in r])
    R, rank = A.rref()
    cols = _rref_pivots(R, rank, ncols)
    T, _ = A.transpose().rref()
    use = _rref_pivots(T, rank, m)
    S = flint.fmpq_mat(rank, rank, [rows[r][c] for r in use for c in cols])
    Sinv = S.inv()
    L = flint.fmpq_mat(ncols, m)
    for a, r in enumerate(use):
        for b, c in enumerate(cols):
            L[c, r] = Sinv[b, a]
    free = [j for j in range(ncols) if j not in set(cols)]
    kernel = []
    for f in free:
        vec = flint.fmpq_mat(ncols, 1)
        vec[f, 0] = 1
        for i, c in enumerate(cols):
            vec[c, 0] = -R[i, f]
        kernel.append(vec)
    return L, kernel, free


def pseudo_inverse(D: flint.fmpq_mat) -> flint.fmpq_mat:
    """Moore-Penrose inverse over the rationals via a full-rank factorization."""
    m, k = D.nrows(), D.ncols()
    if m == 0 or k == 0:
        return flint.fmpq_mat(k, m)
    R, r = D.rref()
    if r == 0:
        return flint.fmpq_mat(k, m)
    pivots, i = [], 0
    for j in range(k):
        if i < r and R[i, j] != 0:
            pivots.append(j)
            i += 1
    F = flint.fmpq_mat(m, r, [D[a, c] for a in range(m) for c in pivots])
    G = flint.fmpq_mat(r, k, [R[a, c] for a in range(r) for c in range(k)])
    Ft, Gt = F.transpose(), G.transpose()
    return Gt * (G * Gt).inv() * (Ft * F).inv() * Ft


@dataclass
class IncidenceOperator:
    """The map from region and curve coordinates to vertex coordinates.

    Columns are the regions followed by the curves in `curves`; rows are vertices.
    """

    matrix: flint.fmpq_mat
    regions: list
    curves: list
    vertices: list

    @property
    def nullity(self) -> int:
        return self.matrix.ncols() - self.matrix.rank()

    def apply(self, vec: list) -> list:
        v = flint.fmpq_mat(len(vec), 1, [_fmpq(c) for c in vec])
        out = self.matrix * v
        return [_frac(out[i, 0]) for i in range(out.nrows())]


@dataclass
class DomainVector:
    """Coefficients on regions and on curve slots."""

    regions: tuple
    curves: tuple = ()

    @property
    def is_class(self) -> bool:
        return all(c == 0 for c in self.curves) and all(
            Fraction(c).denominator == 1 for c in self.regions)


@dataclass
class GradingTable:
    generators: list
    alexander: list  # per generator, tuple over link components
    maslov: list
    components: int = 1

    def collapsed(self, i: int) -> Fraction:
        return sum(self.alexander[i], Fraction(0))

    def rows(self):
        for i, g in enumerate(self.generators):
            yield i, g, self.alexander[i], self.collapsed(i), self.maslov[i]

    def to_csv(self) -> str:
        head = ["generator"] + [f"A{c + 1}" for c in range(self.components)] + ["A", "M"]
        lines = [",".join(head)]
        for i, _, a, ac, m in self.rows():
            lines.append(",".join(str(x) for x in (i, *a, ac, m)))
        return "\n".join(lines) + "\n"


class ChainData:
    """Everything about a frozen nice diagram needed to count disks.

    Built once per diagram; all per-pair work afterwards is sparse.
    """

    def __init__(self, d: HeegaardDiagram):
        self.diagram = d
        S = self.S = d.surface
        self.n = d.n
        self.alphas = list(S.alphas)
        self.betas = list(S.betas)
        self.vertices = sorted(S.vertices(), key=vertex_key)
        self.vindex = {v: i for i, v in enumerate(self.vertices)}
        shapes = S.regions()
        self.regions = sorted(shapes, key=lambda r: r[1])
        self.rindex = {r: i for i, r in enumerate(self.regions)}
        self.curve_at = {}
        for h, v in S.origin.items():
            self.curve_at.setdefault(v, {})["a" if S.is_alpha(h) else "b"] = S.curve[h]
        # corners: region -> {vertex index: [signs]}
        self.corners = [defaultdict(list) for _ in self.regions]
        for h in S.origin:
            g = S.nxt[h]
            sign = 1 if (not S.is_alpha(h) and S.is_alpha(g)) else -1
            self.corners[self.rindex[S.reg[h]]][self.vindex[S.origin[g]]].append(sign)
        self.euler = [Fraction(2 - len(shapes[r])) - Fraction(sum(map(len, shapes[r])), 4)
                      for r in self.regions]
        self.z = {k: self.rindex[r] for k, r in S.z.items()}
        self.w = {k: self.rindex[r] for k, r in S.w.items()}
        self.component_of = basepoint_components(d)
        self.components = len(set(self.component_of.values()))

    # -- incidence ---------------------------------------------------------

    def region_column(self, r: int) -> dict:
        return {v: sum(s) for v, s in self.corners[r].items() if sum(s)}

    def abs_column(self, r: int) -> dict:
        return {v: len(s) for v, s in self.corners[r].items()}

    def curve_column(self, label) -> dict:
        return {self.vindex[v]: 1 for v in self.S.curve_vertices(label)}

    @cached_property
    def c_curves(self) -> list:
        return self.alphas + self.betas[:-1]

    def region_rows(self) -> list:
        """Rows of D restricted to regions as a dense list of lists."""
        rows = [[0] * len(self.regions) for _ in self.vertices]
        for r in range(len(self.regions)):
            for v, c in self.region_column(r).items():
                rows[v][r] = c
        return rows

    # -- domain solver -----------------------------------------------------

    @cached_property
    def _solver(self):
        """Solution operator of [D_R; z rows; w rows except w_1] and its kernel.

        The kernel is nonzero only for split closures; it is spanned by
        periodic domains missing every basepoint.
        """
        rows = self.region_rows()
        nr = len(self.regions)
        keys = sorted(self.z)
        for k in keys:
            rows.append([1 if j == self.z[k] else 0 for j in range(nr)])
        for k in keys[1:]:
            rows.append([1 if j == self.w[k] else 0 for j in range(nr)])
        L, kernel, free = _particular_solver(rows, nr)
        m = len(rows)
        full = flint.fmpq_mat(nr, m + len(kernel))
        for i in range(nr):
            for j in range(m):
                full[i, j] = L[i, j]
            for t, vec in enumerate(kernel):
                full[i, m + t] = vec[i, 0]
        self._nrows = m
        self.free_regions = free
        return _Scaled(full)

    def solve(self, diff: dict, wvals: dict | None = None) -> np.ndarray:
        """Numerator (over `den`) of a domain with D(phi) = diff, n_z = 0, prescribed n_w.

        `diff` maps vertex index to coefficient; `wvals` fixes n_w for w_2..w_n.
        The returned solution vanishes on `free_regions`.
        """
        sol = self._solver
        cols = dict(diff)
        nv = len(self.vertices)
        keys = sorted(self.z)
        for j, k in enumerate(keys[1:]):
            if wvals and wvals.get(k):
                cols[nv + len(keys) + j] = wvals[k]
        return sol.apply(cols)

    def kernel_vectors(self) -> list:
        """Numerators of the kernel basis, one per free region."""
        sol = self._solver
        return [sol.num[:, self._nrows + t] for t in range(len(self.free_regions))]

    @property
    def den(self) -> int:
        return self._solver.den

    # -- measures ----------------------------------------------------------

    def maslov_index(self, phi, x: Generator, y: Generator) -> Fraction:
        """Euler measure plus the point measures at x and y."""
        total = Fraction(0)
        pts = [self.vindex[v] for v in x.vertices + y.vertices]
        for r, c in enumerate(phi):
            if c:
                c = Fraction(c)
                total += c * self.euler[r]
                col = self.corners[r]
                total += c * Fraction(sum(len(col.get(p, ())) for p in pts), 4)
        return total

    def boundary(self, phi) -> dict:
        out = defaultdict(Fraction)
        for r, c in enumerate(phi):
            if c:
                for v, s in self.region_column(r).items():
                    out[v] += c * s
        return {v: c for v, c in out.items() if c}


def basepoint_components(d: HeegaardDiagram) -> dict:
    """Strand index -> link component (0-based) from the complement components.

    Each alpha- or beta-complement component holds one z and one w joined by an
    arc of the link, so chaining them recovers the components; the result must
    agree with the closure permutation of the braid.
    """
    S = d.surface
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            x = parent[x]
        return x

    for fam in "ab":
        for comp in S.complement_components(fam):
            pts = [("z", k) for k, r in S.z.items() if r in comp]
            pts += [("w", k) for k, r in S.w.items() if r in comp]
            for p in pts[1:]:
                parent[find(p)] = find(pts[0])
    for k in S.z:
        find(("z", k))
    closure = d.component_of()
    roots = {}
    out = {}
    for k in sorted(S.z):
        root = find(("z", k))
        out[k] = roots.setdefault(root, len(roots))
        if find(("w", k)) != root:
            raise StructuralError(f"w_{k} and z_{k} lie on different link components")
    for a in out:
        for b in out:
            if (out[a] == out[b]) != (closure[a] == closure[b]):
                raise StructuralError("diagram components disagree with the braid closure")
    return out


# -- generators ----------------------------------------------------------------


def enumerate_generators(d: HeegaardDiagram, cap: int = DEFAULT_GENERATOR_CAP,
                         allowed=None) -> list:
    """All perfect matchings alpha <-> beta through intersection points.

    Depth-first over the alpha curves, fewest intersection points first.
    `allowed` optionally restricts the vertex set.
    """
    S = d.surface
    if not S.alphas:
        return [Generator(())]
    beta_bit = {b: 1 << j for j, b in enumerate(S.betas)}
    choices = []
    for a in S.alphas:
        opts = []
        for h in S.curve_cycle(a):
            v = S.origin[h]
            if allowed is not None and v not in allowed:
                continue
            b = next(S.curve[g] for g, u in _out_edges(S, v) if not S.is_alpha(g))
            opts.append((v, beta_bit[b]))
        choices.append(opts)
    order = sorted(range(len(choices)), key=lambda i: len(choices[i]))
    out, pick = [], [None] * len(choices)

    def rec(depth, used):
        if depth == len(order):
            out.append(Generator(tuple(pick)))
            if len(out) > cap:
                raise GuardrailError(f"more than {cap} generators")
            return
        i = order[depth]
        for v, bit in choices[i]:
            if not used & bit:
                pick[i] = v
                rec(depth + 1, used | bit)
        pick[i] = None

    rec(0, 0)
    out.sort(key=lambda g: tuple(map(vertex_key, g.vertices)))
    return out


def _out_edges(S, v):
    return [(h, v) for h in _by_vertex(S).get(v, ())]


def _by_vertex(S):
    cache = getattr(S, "_by_vertex_cache", None)
    if cache is None or cache[0] != len(S.origin):
        table = defaultdict(list)
        for h, u in S.origin.items():
            table[u].append(h)
        cache = (len(S.origin), table)
        S._by_vertex_cache = cache
    return cache[1]


def vertex_disk(d: HeegaardDiagram, v):
    """0 for the top disk D, 1 for D', None for vertices created by stabilization."""
    m = d.cells
    if m is None or v not in m.edge_of:
        return None
    return m.edge_of[v][0]


def transverse_generator(d: HeegaardDiagram) -> Generator:
    """The generator with all its braid vertices on D (plus handle points)."""
    S = d.surface
    allowed = {v for v in S.vertices() if vertex_disk(d, v) == 0}
    for ahat, bhat in S.stabilization:
        allowed.update(S.intersections(ahat, bhat))
    gens = enumerate_generators(d, allowed=allowed)
    if not gens:
        raise StructuralError("no generator supported on the top disk")
    return gens[0]


# -- incidence operator and its inverse ------------------------------------------


def build_incidence(d: HeegaardDiagram, cd: ChainData | None = None) -> IncidenceOperator:
    cd = cd or chain_data(d)
    rows = cd.region_rows()
    cols = [cd.curve_column(c) for c in cd.c_curves]
    nr = len(cd.regions)
    for v, row in enumerate(rows):
        row.extend(col.get(v, 0) for col in cols)
    ncols = nr + len(cols)
    mat = flint.fmpq_mat(len(rows), ncols, [x for row in rows for x in row])
    return IncidenceOperator(mat, list(cd.regions), list(cd.c_curves), list(cd.vertices))


def periodic_domains(d: HeegaardDiagram, cd: ChainData | None = None):
    """Region vectors of the alpha- and beta-complement components, ordered by their z."""
    cd = cd or chain_data(d)
    S = d.surface
    out = {}
    for fam in "ab":
        comps = []
        for comp in S.complement_components(fam):
            k = next(k for k, r in S.z.items() if r in comp)
            vec = [0] * len(cd.regions)
            for r in comp:
                vec[cd.rindex[r]] = 1
            comps.append((k, vec))
        out[fam] = [v for _, v in sorted(comps)]
    return out["a"], out["b"]


def domain_basis_check(d: HeegaardDiagram):
    """The kernel of the incidence operator restricted to regions equals span(A, B)."""
    cd = chain_data(d)
    D = build_incidence(d, cd)
    A, B = periodic_domains(d, cd)
    nc = len(cd.c_curves)
    for vec in A + B:
        if any(D.apply(vec + [0] * nc)):
            return False
    span = flint.fmpq_mat(len(A + B), len(cd.regions), [x for v in A + B for x in v]).rank()
    return span == D.nullity


_DATA = {}


def chain_data(d: HeegaardDiagram) -> ChainData:
    key = id(d)
    hit = _DATA.get(key)
    if hit is None or hit[0] is not d:
        hit = (d, ChainData(d))
        _DATA.clear()
        _DATA[key] = hit
    return hit[1]


class Inverse:
    """The pseudo-inverse W of the incidence operator, computed once per diagram."""

    def __init__(self, op: IncidenceOperator):
        self.op = op
        self.mat = pseudo_inverse(op.matrix)

    def __call__(self, vec: list) -> list:
        v = flint.fmpq_mat(len(vec), 1, [_fmpq(c) for c in vec])
        out = self.mat * v
        return [_frac(out[i, 0]) for i in range(out.nrows())]


def connecting_domains(d: HeegaardDiagram, x: Generator, y: Generator,
                       W: Inverse | None = None) -> list:
    """Integral domain classes among W(x - y) and its half-periodic corrections.

    For each alpha/beta pair carrying distinct points of x and y the candidate
    is shifted by plus or minus half of P_ij (the periodic domain bounded by
    alpha_i and beta_j).  Candidates with nonzero curve part or non-integral
    region part are discarded.
    """
    cd = chain_data(d)
    W = W or Inverse(build_incidence(d, cd))
    diff = [0] * len(cd.vertices)
    for v in x.vertices:
        diff[cd.vindex[v]] += 1
    for v in y.vertices:
        diff[cd.vindex[v]] -= 1
    base = W(diff)
    nr = len(cd.regions)
    cands = [base]
    A, B = periodic_domains(d, cd)
    pairs = set()
    for u, v in zip(x.vertices, y.vertices):
        if u != v and cd.curve_at[u] == cd.curve_at[v]:
            i = cd.alphas.index(cd.curve_at[u]["a"]) + 1
            j = cd.betas.index(cd.curve_at[u]["b"]) + 1
            pairs.add((i, j))
    for i, j in sorted(pairs):
        P = [sum(a[r] for a in A[:i]) - sum(b[r] for b in B[:j]) for r in range(nr)]
        for s in (1, -1):
            cands.append([c + (Fraction(s * P[r], 2) if r < nr else 0)
                          for r, c in enumerate(base)])
    out, seen = [], set()
    for c in cands:
        dv = DomainVector(tuple(c[:nr]), tuple(c[nr:]))
        if dv.is_class and dv.regions not in seen:
            seen.add(dv.regions)
            out.append(dv)
    return out


def euler_measure(corners: int, boundary_cycles: int = 1) -> Fraction:
    """Euler measure of a planar region with 4-valent corners: chi - corners/4."""
    return Fraction(2 - boundary_cycles) - Fraction(corners, 4)


def euler_vector(d: HeegaardDiagram) -> list:
    return list(chain_data(d).euler)


def relative_alexander(d: HeegaardDiagram, phi) -> tuple:
    """Per-component n_z - n_w of a region vector, and the collapsed sum."""
    cd = chain_data(d)
    per = [Fraction(0)] * cd.components
    for k, r in cd.z.items():
        per[cd.component_of[k]] += Fraction(phi[r])
    for k, r in cd.w.items():
        per[cd.component_of[k]] -= Fraction(phi[r])
    return tuple(per), sum(per, Fraction(0))


def relative_maslov(d: HeegaardDiagram, x: Generator, y: Generator, phi) -> Fraction:
    """Index of phi minus twice its multiplicity at the w basepoints."""
    cd = chain_data(d)
    nw = sum(Fraction(phi[r]) for r in cd.w.values())
    return cd.maslov_index(phi, x, y) - 2 * nw


# -- gradings ----------------------------------------------------------------------


class _GradingForms:
    """Linear and quadratic forms giving A and M of x relative to a base generator.

    With phi = L(x - y) the domain solved with n_z = 0 (and fixed w
    multiplicities), A and M differences are linear in phi, and phi is linear
    in x - y.  Periodic domains contribute nothing, so any rational solution
    gives the same answer.
    """

    def __init__(self, cd: ChainData):
        sol = cd._solver
        nv, nr = len(cd.vertices), len(cd.regions)
        L = sol.num[:, :nv]
        self.den = sol.den
        self.alex = []
        for c in range(cd.components):
            ws = [cd.w[k] for k in cd.w if cd.component_of[k] == c]
            zs = [cd.z[k] for k in cd.z if cd.component_of[k] == c]
            self.alex.append(L[zs].sum(axis=0) - L[ws].sum(axis=0))
        e4 = np.array([int(4 * e) for e in cd.euler], dtype=L.dtype)
        wrows = [cd.w[k] for k in cd.w]
        self.lin4 = e4 @ L - 8 * L[wrows].sum(axis=0) if nr else np.zeros(nv, dtype=L.dtype)
        absd = np.zeros((nv, nr), dtype=L.dtype)
        for r in range(nr):
            for v, m in cd.abs_column(r).items():
                absd[v, r] = m
        self.quad = absd @ L if nr else np.zeros((nv, nv), dtype=L.dtype)
        self.cd = cd

    def diff(self, x: Generator, y: Generator):
        """(per-component A(x) - A(y), M(x) - M(y)) as Fractions."""
        vi = self.cd.vindex
        delta = defaultdict(int)
        for v in x.vertices:
            delta[vi[v]] += 1
        for v in y.vertices:
            delta[vi[v]] -= 1
        delta = {k: c for k, c in delta.items() if c}
        alex = tuple(Fraction(int(sum(c * a[k] for k, c in delta.items())), self.den)
                     for a in self.alex)
        m4 = sum(c * self.lin4[k] for k, c in delta.items())
        for p in x.vertices + y.vertices:
            row = self.quad[vi[p]]
            m4 += sum(c * row[k] for k, c in delta.items())
        return alex, Fraction(int(m4), 4 * self.den)


def relative_gradings(d: HeegaardDiagram, gens: list) -> GradingTable:
    """Gradings with the first generator at the origin."""
    cd = chain_data(d)
    if not gens:
        return GradingTable([], [], [], cd.components)
    forms = _GradingForms(cd)
    alex, mas = [], []
    for g in gens:
        a, m = forms.diff(g, gens[0])
        alex.append(a)
        mas.append(m)
    return GradingTable(list(gens), alex, mas, cd.components)


def grading_difference(d: HeegaardDiagram, x: Generator, y: Generator):
    return _GradingForms(chain_data(d)).diff(x, y)


def absolute_gradings(d: HeegaardDiagram, gens: list, table: GradingTable | None = None,
                      entries: list | None = None) -> GradingTable:
    """Shift relative gradings to the absolute normalization.

    Alexander: in each component coordinate the tilde homology is centred at
    -(n_c - 1)/2, which makes the hat homology symmetric.  Maslov: the homology
    of the complex counting every disk missing z (all U set to 1), graded by
    M - 2A, is the hat homology of the sphere tensored with the n - 1 extra
    basepoint pairs; its top sits at n - l for an l-component link.
    """
    from . import floer

    table = table or relative_gradings(d, gens)
    if entries is None:
        entries = floer.differential(d, gens, table)
    cd = chain_data(d)
    tilde = floer.reduce_complex(len(gens), [(e.source, e.target, 0) for e in entries
                                             if not any(e.exponents)], _sort_key(table))
    live = tilde.free
    if not live:
        raise StructuralError("tilde homology vanishes")
    counts = defaultdict(int)
    for k, c in cd.component_of.items():
        counts[c] += 1
    shift_a = []
    for c in range(cd.components):
        vals = [table.alexander[i][c] for i in live]
        shift_a.append(-(max(vals) + min(vals)) / 2 - Fraction(counts[c] - 1, 2))
    alex = [tuple(a + s for a, s in zip(row, shift_a)) for row in table.alexander]
    zgrade = [table.maslov[i] - 2 * sum(alex[i], Fraction(0)) for i in range(len(gens))]
    zhom = floer.reduce_complex(len(gens), [(e.source, e.target, 0) for e in entries],
                                lambda i: -zgrade[i])
    if not zhom.free:
        raise StructuralError("the basepoint-forgetting complex has no homology")
    top = max(zgrade[i] for i in zhom.free)
    shift_m = (d.n - cd.components) - top
    out = GradingTable(list(gens), alex, [m + shift_m for m in table.maslov], cd.components)
    _check_euler(out, d.n)
    return out


def _sort_key(table):
    return lambda i: -table.maslov[i]


def _check_euler(table: GradingTable, n: int):
    """Graded Euler characteristic of tilde is symmetric about -(n - 1)/2 (knots)."""
    if table.components != 1:
        return
    chi = defaultdict(int)
    for i in range(len(table.generators)):
        a = table.collapsed(i)
        chi[a] += -1 if table.maslov[i].numerator % 2 else 1
    chi = {a: c for a, c in chi.items() if c}
    centre = Fraction(-(n - 1), 2)
    for a, c in chi.items():
        if chi.get(2 * centre - a, 0) != c * (-1) ** (n - 1):
            raise StructuralError("graded Euler characteristic is not symmetric")
