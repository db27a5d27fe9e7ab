"""The knot Floer differential and its homology in the tilde, hat and minus flavors."""

from __future__ import annotations

import heapq
import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .chains import (GradingTable, absolute_gradings, chain_data, enumerate_generators,
                     relative_gradings)
from .diagram import HeegaardDiagram, StructuralError


class UnsupportedFlavor(ValueError):
    """The minus flavor is only defined here for knots."""


@dataclass(frozen=True)
class DifferentialEntry:
    source: int
    target: int
    exponents: tuple  # power of U_{w_k}, k = 1..n

    @property
    def degree(self) -> int:
        return sum(self.exponents)


def _pairs(gens: list):
    """Ordered pairs of generators differing in one or two coordinates."""
    k = len(gens[0]) if gens else 0
    for size in (1, 2):
        for drop in itertools.combinations(range(k), size):
            groups = defaultdict(list)
            for idx, g in enumerate(gens):
                key = tuple(v for j, v in enumerate(g.vertices) if j not in drop)
                groups[key].append(idx)
            for members in groups.values():
                for a, b in itertools.permutations(members, 2):
                    ga, gb = gens[a].vertices, gens[b].vertices
                    if all(ga[j] != gb[j] for j in drop):
                        yield a, b


def differential(d: HeegaardDiagram, gens: list, table: GradingTable, jobs: int = 1) -> list:
    """Every empty embedded bigon and square missing z, with its U monomial.

    A candidate pair must have gradings compatible with an index one disk;
    the domain is then solved exactly for each placement of the w
    multiplicities and kept if it is a 0/1 vector of index one.
    """
    pairs = list(_pairs(gens))
    if jobs > 1 and len(pairs) > 5000:
        return _parallel(d, gens, table, pairs, jobs)
    return sorted(_screen(d, gens, table, pairs), key=_entry_key)


def _entry_key(e):
    return (e.source, e.target, e.exponents)


_SHARED = {}


def _screen_chunk(bounds):
    d, gens, table, pairs = _SHARED["args"]
    return _screen(d, gens, table, pairs[bounds[0]:bounds[1]])


def _parallel(d, gens, table, pairs, jobs):
    import multiprocessing as mp

    chain_data(d)._solver  # build once before forking
    _SHARED["args"] = (d, gens, table, pairs)
    step = -(-len(pairs) // (4 * jobs))
    chunks = [(i, min(i + step, len(pairs))) for i in range(0, len(pairs), step)]
    try:
        with mp.get_context("fork").Pool(jobs) as pool:
            parts = pool.map(_screen_chunk, chunks)
    finally:
        _SHARED.clear()
    return sorted((e for part in parts for e in part), key=_entry_key)


def _candidates(cd, gens, table, pairs):
    """(source, target, hot w keys) triples that pass the grading filter."""
    keys = sorted(cd.w)
    comp_ws = defaultdict(list)
    for k in keys:
        comp_ws[cd.component_of[k]].append(k)
    comps = sorted(comp_ws)
    ga = [tuple(int(2 * v) for v in row) for row in table.alexander]
    gm = [int(2 * m) for m in table.maslov]
    for a, b in pairs:
        steps = [q - p for p, q in zip(ga[a], ga[b])]
        if any(s < 0 or s % 2 for s in steps):
            continue
        da = [s // 2 for s in steps]
        if gm[a] - gm[b] != 2 - 4 * sum(da):
            continue
        if any(da[c] > len(comp_ws[c]) for c in comps):
            continue
        for pick in itertools.product(*(itertools.combinations(comp_ws[c], da[c]) for c in comps)):
            yield a, b, frozenset(k for grp in pick for k in grp)


_BATCH = 20000


def _screen(d: HeegaardDiagram, gens: list, table: GradingTable, pairs) -> list:
    """Solve the domain of every candidate in numpy batches and keep the 0/1 ones."""
    cd = chain_data(d)
    sol, den = cd._solver, cd.den
    if sol.num.dtype == object:
        return _screen_exact(cd, gens, _candidates(cd, gens, table, pairs))
    keys = sorted(cd.w)
    nv, nk = len(cd.vertices), len(keys)
    wcol = {k: nv + nk + j for j, k in enumerate(keys[1:])}
    rows = np.vstack([sol.num.T, np.zeros((1, sol.num.shape[0]), dtype=sol.num.dtype)])
    pad = rows.shape[0] - 1
    width = 4 + nk
    kernel = cd.kernel_vectors()
    shifts = [sum((v for c, v in zip(sh, kernel) if c), np.zeros(rows.shape[1], dtype=rows.dtype))
              for sh in itertools.product((0, 1), repeat=len(kernel))]
    wreg = np.array([cd.w[k] for k in keys])
    zreg = np.array(sorted(cd.z.values()))
    out = []
    cands = _candidates(cd, gens, table, pairs)
    while True:
        batch = list(itertools.islice(cands, _BATCH))
        if not batch:
            break
        idx = np.full((len(batch), width), pad)
        coef = np.zeros((len(batch), width), dtype=rows.dtype)
        hot = np.zeros((len(batch), nk), dtype=bool)
        for t, (a, b, ks) in enumerate(batch):
            j = 0
            for u, v in zip(gens[a].vertices, gens[b].vertices):
                if u != v:
                    idx[t, j], coef[t, j] = cd.vindex[u], 1
                    idx[t, j + 1], coef[t, j + 1] = cd.vindex[v], -1
                    j += 2
            for k in ks:
                hot[t, keys.index(k)] = True
                if k in wcol:
                    idx[t, j], coef[t, j] = wcol[k], 1
                    j += 1
        base = np.einsum("bw,bwr->br", coef, rows[idx])
        for shift in shifts:
            phi = base + shift
            ok = np.all((phi == 0) | (phi == den), axis=1)
            ok &= np.all((phi[:, wreg] == den) == hot, axis=1)
            if len(zreg):
                ok &= ~np.any(phi[:, zreg], axis=1)
            for t in np.flatnonzero(ok):
                a, b, ks = batch[t]
                _accept(cd, gens, a, b, ks, phi[t] // den, out)
    return out


def _accept(cd, gens, a, b, ks, phi, out):
    phi = [int(c) for c in phi]
    if cd.maslov_index(phi, gens[a], gens[b]) != 1:
        raise StructuralError(f"0/1 domain from {a} to {b} with index != 1")
    out.append(DifferentialEntry(a, b, tuple(int(k in ks) for k in sorted(cd.w))))


def _screen_exact(cd, gens, cands) -> list:
    """Unbatched path for solution matrices with very large entries."""
    den, keys, out = cd.den, sorted(cd.w), []
    kernel = cd.kernel_vectors()
    for a, b, ks in cands:
        diff = defaultdict(int)
        for v in gens[a].vertices:
            diff[cd.vindex[v]] += 1
        for v in gens[b].vertices:
            diff[cd.vindex[v]] -= 1
        base = cd.solve(diff, {k: 1 for k in ks})
        for shift in itertools.product((0, 1), repeat=len(kernel)):
            phi = base + sum((v for c, v in zip(shift, kernel) if c), 0 * base)
            if not all(c == 0 or c == den for c in phi):
                continue
            if any((phi[cd.w[k]] == den) != (k in ks) for k in keys):
                continue
            if any(phi[r] for r in cd.z.values()):
                continue
            _accept(cd, gens, a, b, ks, [c // den for c in phi], out)
    return out


def verify_d_squared(entries: list, identify: bool = False) -> bool:
    """d o d = 0 with polynomial coefficients mod 2."""
    by_source = defaultdict(list)
    for e in entries:
        by_source[e.source].append(e)
    for src, first in by_source.items():
        acc = defaultdict(int)
        for e in first:
            for f in by_source.get(e.target, ()):
                mono = tuple(p + q for p, q in zip(e.exponents, f.exponents))
                if identify:
                    mono = (sum(mono),)
                acc[(f.target, mono)] ^= 1
        bad = [k for k, v in acc.items() if v]
        if bad:
            raise StructuralError(f"d^2 != 0 starting at generator {src}: {bad[:3]}")
    return True


# -- graded reduction over F[U] --------------------------------------------------


@dataclass
class Reduction:
    """Result of cancelling a graded complex over F[U]: paired generators and survivors."""

    pairs: list  # (source, target, U-power)
    free: list


def reduce_complex(size: int, entries, order=None) -> Reduction:
    """Split a complex of free graded F[U]-modules into towers.

    `entries` are (source, target, power) terms of the differential mod 2.
    Pivots are taken with the smallest power first; within a power, by
    `order` of the source.  Pivot (x, y, k) splits off F[U]x -> F[U]y with
    multiplication by U^k; the rest is updated by the zigzag rule
    d(s, t) += d(s, y) d(x, y)^-1 d(x, t), which keeps powers nonnegative
    because k is minimal.
    """
    fwd = defaultdict(dict)
    bwd = defaultdict(dict)
    order = order or (lambda i: i)
    heap = []

    def toggle(s, t, p):
        cur = fwd[s].get(t)
        if cur is None:
            fwd[s][t] = p
            bwd[t][s] = p
            heapq.heappush(heap, (p, order(s), s, t))
        else:
            if cur != p:
                raise StructuralError("inhomogeneous differential")
            del fwd[s][t]
            del bwd[t][s]

    for s, t, p in entries:
        toggle(s, t, p)
    alive = set(range(size))
    pairs = []
    while heap:
        k, _, x, y = heapq.heappop(heap)
        if fwd.get(x, {}).get(y) != k:
            continue
        srcs = [(s, p) for s, p in bwd[y].items() if s != x]
        tgts = [(t, p) for t, p in fwd[x].items() if t != y]
        for s, ps in srcs:
            for t, pt in tgts:
                toggle(s, t, ps - k + pt)
        for g in (x, y):
            for t in list(fwd[g]):
                del bwd[t][g]
            for s in list(bwd[g]):
                del fwd[s][g]
            fwd.pop(g, None)
            bwd.pop(g, None)
            alive.discard(g)
        pairs.append((x, y, k))
    return Reduction(pairs, sorted(alive))


# -- bigraded modules -----------------------------------------------------------


@dataclass
class BigradedModule:
    flavor: str
    ranks: dict = field(default_factory=dict)  # (alexander tuple, maslov) -> rank
    towers: list = field(default_factory=list)  # (alexander tuple, maslov, length or None)

    def total_rank(self) -> int:
        return sum(self.ranks.values())

    def poincare(self) -> dict:
        return dict(self.ranks)

    def collapsed(self) -> dict:
        out = defaultdict(int)
        for (a, m), r in self.ranks.items():
            out[(sum(a, Fraction(0)), m)] += r
        return dict(out)


def homology_tilde(entries: list, table: GradingTable) -> BigradedModule:
    """Set every U to zero and take homology per bigrading."""
    red = reduce_complex(len(table.generators),
                         [(e.source, e.target, 0) for e in entries if not e.degree],
                         lambda i: -table.maslov[i])
    ranks = defaultdict(int)
    for i in red.free:
        ranks[(table.alexander[i], table.maslov[i])] += 1
    return BigradedModule("tilde", dict(ranks))


def _divide(poly: dict, comp: int, times: int, towers: bool = False) -> dict:
    """Divide a graded multiset by (1 + m^-1 a_comp^-1)^times exactly."""
    cur = dict(poly)
    for _ in range(times):
        quo = {}
        rem = dict(cur)
        for key in sorted(rem, key=lambda k: (-k[0][comp], -k[1])):
            c = rem.get(key, 0)
            if not c:
                continue
            if c < 0:
                raise StructuralError("graded division is not exact")
            quo[key] = c
            a, m = key[0], key[1]
            low = (tuple(x - (1 if j == comp else 0) for j, x in enumerate(a)), m - 1) + key[2:]
            rem[key] = 0
            rem[low] = rem.get(low, 0) - c
        if any(rem.values()):
            raise StructuralError("graded division is not exact")
        cur = quo
    return cur


def hat_from_tilde(tilde: BigradedModule, counts: dict) -> BigradedModule:
    """Remove the V factors: one per basepoint pair beyond the first on each component."""
    cur = tilde.ranks
    for comp, k in counts.items():
        cur = _divide(cur, comp, k - 1)
    return BigradedModule("hat", cur)


def homology_minus(entries: list, table: GradingTable, counts: dict) -> BigradedModule:
    """Towers of HFK^- for a knot.

    All U_{w_k} are identified on the chain level, the complex is split into
    towers, and the n - 1 resulting V factors are divided out of the tower list.
    """
    if len(counts) != 1:
        raise UnsupportedFlavor("the minus flavor needs a knot; use tilde or hat for links")
    red = reduce_complex(len(table.generators),
                         [(e.source, e.target, e.degree) for e in entries],
                         lambda i: -table.maslov[i])
    multiset = defaultdict(int)
    for x, y, k in red.pairs:
        if k:
            multiset[(table.alexander[y], table.maslov[y], k)] += 1
    for i in red.free:
        multiset[(table.alexander[i], table.maslov[i], None)] += 1
    (comp, n), = counts.items()
    by_len = defaultdict(dict)
    for (a, m, k), c in multiset.items():
        by_len[k][(a, m)] = c
    towers = []
    for k, poly in by_len.items():
        for (a, m), c in _divide(poly, comp, n - 1).items():
            towers.extend([(a, m, k)] * c)
    towers.sort(key=lambda t: (t[2] is not None, -t[1], t[0], t[2] or 0))
    ranks = defaultdict(int)
    for a, m, k in towers:
        for j in range(k if k is not None else 1):
            ranks[(tuple(x - j for x in a), m - 2 * j)] += 1
    if sum(1 for t in towers if t[2] is None) != 1:
        raise StructuralError("HFK^- of a knot must have exactly one free tower")
    return BigradedModule("minus", dict(ranks), towers)


# -- end-to-end -----------------------------------------------------------------

FLAVORS = ("tilde", "hat", "minus")


@dataclass
class FloerResult:
    word: object
    flavor: str
    diagram: HeegaardDiagram
    generators: list
    gradings: GradingTable
    entries: list
    module: BigradedModule
    counts: dict  # link component -> basepoint pairs
    transverse: int | None = None
    timings: dict = field(default_factory=dict)

    @property
    def components(self) -> int:
        return len(self.counts)

    def to_json(self, timings: bool = False) -> dict:
        d = self.diagram
        out = {
            "flavor": self.flavor,
            "word": str(self.word),
            "strands": self.word.strands,
            "components": self.components,
            "table": [{"alexander": [_num(a) for a in A], "maslov": _num(m), "rank": r}
                      for (A, m), r in sorted(self.module.ranks.items())],
            "towers": [{"topAlexander": [_num(a) for a in A], "topMaslov": _num(m),
                        "length": "free" if k is None else k}
                       for A, m, k in self.module.towers],
            "generatorCount": len(self.generators),
            "diagramComplexity": list(d.complexity()),
            "genus": d.genus,
            "trace": [{"letter": list(t.letter), "vertices": t.v_after} for t in d.trace],
        }
        if self.transverse is not None:
            i = self.transverse
            out["transverseGenerator"] = {
                "alexander": [_num(a) for a in self.gradings.alexander[i]],
                "maslov": _num(self.gradings.maslov[i])}
        if timings:
            out["timings"] = {k: round(v, 4) for k, v in self.timings.items()}
        return out


def _num(q):
    q = Fraction(q)
    return q.numerator if q.denominator == 1 else float(q)


def compute(word, flavor: str = "hat", mirror: bool = False, vertex_limit: int = 10**6,
            generator_cap: int | None = None, jobs: int = 1) -> FloerResult:
    """Braid word -> nice diagram -> complex -> homology of the requested flavor."""
    import time

    from .braid import closure_structure, reverse_invert
    from .chains import DEFAULT_GENERATOR_CAP, transverse_generator
    from .diagram import build_diagram

    if flavor not in FLAVORS:
        raise ValueError(f"unknown flavor {flavor!r}")
    if mirror:
        word = reverse_invert(word)
    if flavor == "minus" and closure_structure(word).component_count != 1:
        raise UnsupportedFlavor("the minus flavor needs a knot; use tilde or hat for links")
    clock, times = time.perf_counter(), {}

    def lap(name):
        nonlocal clock
        now = time.perf_counter()
        times[name] = now - clock
        clock = now

    d = build_diagram(word, vertex_limit=vertex_limit)
    lap("diagram")
    gens = enumerate_generators(d, cap=generator_cap or DEFAULT_GENERATOR_CAP)
    lap("generators")
    rel = relative_gradings(d, gens)
    entries = differential(d, gens, rel, jobs=jobs)
    verify_d_squared(entries)
    table = absolute_gradings(d, gens, rel, entries)
    lap("chains")
    cd = chain_data(d)
    counts = defaultdict(int)
    for c in cd.component_of.values():
        counts[c] += 1
    counts = dict(sorted(counts.items()))
    if flavor == "minus":
        module = homology_minus(entries, table, counts)
    else:
        module = homology_tilde(entries, table)
        if flavor == "hat":
            module = hat_from_tilde(module, counts)
    lap("homology")
    x = transverse_generator(d)
    res = FloerResult(word, flavor, d, gens, table, entries, module, counts,
                      gens.index(x), times)
    return res
