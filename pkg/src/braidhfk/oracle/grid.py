"""Brute-force knot Floer homology of grid diagrams.

Generators are permutations, the differential counts empty rectangles on the
torus, and gradings come from the closed formulas in the coordinates of the
generator and the markings.  Nothing here shares code with the braid pipeline
except the result type.
"""

from __future__ import annotations

import itertools
import json
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

import flint

from ..diagram import GuardrailError
from ..floer import BigradedModule

GRID_CAP = 8


@dataclass(frozen=True)
class GridDiagram:
    size: int
    X: tuple  # column of the X marking in each row
    O: tuple

    def __post_init__(self):
        n = self.size
        for name, perm in (("X", self.X), ("O", self.O)):
            if sorted(perm) != list(range(n)):
                raise ValueError(f"{name} markings are not a permutation")
        if any(a == b for a, b in zip(self.X, self.O)):
            raise ValueError("a cell holds both an X and an O")

    @classmethod
    def from_json(cls, data: dict) -> "GridDiagram":
        return cls(int(data["size"]), tuple(data["X"]), tuple(data["O"]))

    def to_json(self) -> dict:
        return {"size": self.size, "X": list(self.X), "O": list(self.O)}

    def components(self) -> int:
        """Cycles of the permutation row -> row through the X and O of each column."""
        col_x = {c: r for r, c in enumerate(self.X)}
        seen, count = set(), 0
        for start in range(self.size):
            if start in seen:
                continue
            count += 1
            r = start
            while r not in seen:
                seen.add(r)
                r = col_x[self.O[r]]
        return count


def load_fixture(name: str) -> GridDiagram:
    text = resources.files(__package__).joinpath("fixtures", f"{name}.json").read_text()
    return GridDiagram.from_json(json.loads(text))


def _I(A, B) -> int:
    return sum(1 for a in A for b in B if a[0] < b[0] and a[1] < b[1])


def _J2(A, B) -> int:
    """Twice J(A, B)."""
    return _I(A, B) + _I(B, A)


def grid_gradings(g: GridDiagram, perm) -> tuple:
    """(Alexander, Maslov) of a generator in doubled coordinates."""
    pts = [(2 * i, 2 * r) for i, r in enumerate(perm)]
    Os = [(2 * c + 1, 2 * r + 1) for r, c in enumerate(g.O)]
    Xs = [(2 * c + 1, 2 * r + 1) for r, c in enumerate(g.X)]

    def maslov(marks):
        # every J is over doubled coordinates; I counts are scale free
        return Fraction(_J2(pts, pts) - 2 * _J2(pts, marks) + _J2(marks, marks), 2) + 1

    mo, mx = maslov(Os), maslov(Xs)
    return (mo - mx) / 2 - Fraction(g.size - 1, 2), mo


def _in_range(v, lo, hi, n):
    """v strictly inside the cyclic interval (lo, hi)."""
    return 0 < (v - lo) % n < (hi - lo) % n or (lo == hi and v != lo)


def _cell_in(v, lo, hi, n):
    """Cell index v inside the cyclic half-open interval [lo, hi)."""
    return (v - lo) % n < ((hi - lo) % n or n)


def rectangles(g: GridDiagram, perm):
    """Empty rectangles out of `perm`: yields (target permutation, O count, X count)."""
    n = g.size
    for i, j in itertools.combinations(range(n), 2):
        tgt = list(perm)
        tgt[i], tgt[j] = tgt[j], tgt[i]
        tgt = tuple(tgt)
        for left, right in ((i, j), (j, i)):
            bottom, top = perm[left], perm[right]
            if any(_in_range(c, left, right, n) and _in_range(perm[c], bottom, top, n)
                   for c in range(n)):
                continue
            o = sum(1 for r, c in enumerate(g.O)
                    if _cell_in(c, left, right, n) and _cell_in(r, bottom, top, n))
            x = sum(1 for r, c in enumerate(g.X)
                    if _cell_in(c, left, right, n) and _cell_in(r, bottom, top, n))
            yield tgt, o, x


def grid_complex(g: GridDiagram):
    if g.size > GRID_CAP:
        raise GuardrailError(f"grid of size {g.size} exceeds the cap {GRID_CAP}")
    gens = list(itertools.permutations(range(g.size)))
    grades = {p: grid_gradings(g, p) for p in gens}
    return gens, grades


def grid_tilde(g: GridDiagram) -> BigradedModule:
    """Homology of the complex counting rectangles free of all markings."""
    gens, grades = grid_complex(g)
    by_grade = defaultdict(list)
    for p in gens:
        by_grade[grades[p]].append(p)
    index = {p: k for ps in by_grade.values() for k, p in enumerate(ps)}
    maps = defaultdict(lambda: defaultdict(int))
    for p in gens:
        for q, o, x in rectangles(g, p):
            if o == 0 and x == 0:
                maps[grades[p]][(index[q], index[p])] ^= 1

    def rank(src):
        a, m = src
        tgt = (a, m - 1)
        if src not in by_grade or tgt not in by_grade or src not in maps:
            return 0
        mat = flint.nmod_mat(len(by_grade[tgt]), len(by_grade[src]), 2)
        for (r, c), v in maps[src].items():
            if v:
                mat[r, c] = 1
        return mat.rank()

    ranks = {}
    for (a, m), ps in by_grade.items():
        h = len(ps) - rank((a, m)) - rank((a, m + 1))
        if h:
            ranks[((a,), m)] = h
    return BigradedModule("tilde", ranks)


def grid_hfk(g: GridDiagram) -> BigradedModule:
    """HFK-hat of a grid knot: tilde divided by (1 + m^-1 a^-1)^(size - 1)."""
    if g.components() != 1:
        raise ValueError("the grid oracle handles knots only")
    tilde = grid_tilde(g)
    cur = {(a[0], m): r for (a, m), r in tilde.ranks.items()}
    for _ in range(g.size - 1):
        quo = {}
        for a, m in sorted(cur, key=lambda k: (-k[0], -k[1])):
            c = cur.get((a, m), 0)
            if c < 0:
                raise ValueError("grid homology is not divisible by V")
            if c:
                quo[(a, m)] = c
                cur[(a - 1, m - 1)] = cur.get((a - 1, m - 1), 0) - c
                cur[(a, m)] = 0
        if any(cur.values()):
            raise ValueError("grid homology is not divisible by V")
        cur = quo
    return BigradedModule("hat", {((a,), m): r for (a, m), r in cur.items()})


def grid_minus_towers(g: GridDiagram) -> list:
    """Tower decomposition of the minus grid complex with all U identified.

    Returns (alexander, maslov, length or None) after dividing out the
    size - 1 extra basepoint factors.
    """
    from ..floer import _divide, reduce_complex

    gens, grades = grid_complex(g)
    idx = {p: k for k, p in enumerate(gens)}
    entries = []
    for p in gens:
        for q, o, x in rectangles(g, p):
            if x == 0:
                entries.append((idx[p], idx[q], o))
    red = reduce_complex(len(gens), entries, lambda i: -grades[gens[i]][1])
    by_len = defaultdict(lambda: defaultdict(int))
    for s, t, k in red.pairs:
        if k:
            a, m = grades[gens[t]]
            by_len[k][((a,), m)] += 1
    for i in red.free:
        a, m = grades[gens[i]]
        by_len[None][((a,), m)] += 1
    out = []
    for k, poly in by_len.items():
        for (a, m), c in _divide(dict(poly), 0, g.size - 1).items():
            out.extend([(a, m, k)] * c)
    return sorted(out, key=lambda t: (t[2] is not None, -t[1], t[0], t[2] or 0))


def torus_grid(p: int, q: int) -> GridDiagram:
    """The (p + q)-grid of the torus knot T(p, q): X on the diagonal, O shifted by q."""
    n = p + q
    return GridDiagram(n, tuple(range(n)), tuple((r + q) % n for r in range(n)))


FIXTURES = ("unknot", "trefoil", "figure_eight", "t25", "t34")


def module_to_json(m: BigradedModule) -> list:
    return [{"alexander": [str(x) for x in a], "maslov": str(mm), "rank": r}
            for (a, mm), r in sorted(m.ranks.items())]


def module_from_json(flavor: str, rows: list) -> BigradedModule:
    return BigradedModule(flavor, {(tuple(Fraction(x) for x in r["alexander"]),
                                    Fraction(r["maslov"])): r["rank"] for r in rows})


def golden(name: str) -> BigradedModule:
    """Cached HFK-hat of a fixture grid (see `write_golden`)."""
    path = resources.files(__package__).joinpath("fixtures", f"golden_{name}.json")
    return module_from_json("hat", json.loads(path.read_text()))


def write_golden(directory) -> None:
    from pathlib import Path

    for name in FIXTURES:
        rows = module_to_json(grid_hfk(load_fixture(name)))
        Path(directory, f"golden_{name}.json").write_text(json.dumps(rows, indent=1) + "\n")


if __name__ == "__main__":
    import sys

    write_golden(sys.argv[1] if len(sys.argv) > 1 else resources.files(__package__) / "fixtures")
