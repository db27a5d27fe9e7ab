"""Complexity bounds that every braid diagram must satisfy.

A violation means a bug in the construction, never a legitimate input.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .build import HeegaardDiagram


@dataclass
class BoundReport:
    checks: list = field(default_factory=list)  # (name, measured, bound, ok)

    @property
    def ok(self) -> bool:
        return all(c[3] for c in self.checks)

    def violations(self) -> list:
        return [c for c in self.checks if not c[3]]

    def add(self, name, measured, bound):
        self.checks.append((name, measured, bound, measured <= bound))


def twisted_bound(n: int, length: int) -> tuple:
    """Complexity allowed for the twisted diagram before any stabilization."""
    return n, 4**length + 2 * n


def nice_bound(n: int, length: int) -> tuple:
    # 2n - 2 counts one alpha more than there are; n covers n = 1
    return max(2 * n - 2, n), 4 ** (length + 1) + 8 * n


def torus_bound(p: int, q: int) -> tuple:
    """(alpha curves, vertices) allowed for the nice diagram of (s1 ... s_{q-1})^p."""
    return 2 * q - 3, 24 * (p / q + 1) * (q - 1) ** 2


def full_twist_growth(q: int) -> int:
    return sum(4 * (q - i) ** 2 for i in range(1, q))


def check_bounds(d: HeegaardDiagram, generators: int | None = None) -> BoundReport:
    n, ln = d.n, len(d.word)
    rep = BoundReport()
    for k, t in enumerate(d.trace, 1):
        rep.add(f"letter {k} vertices", t.v_after, t.v_before + 12 * t.gamma)
    c0, v0 = d.pre_complexity
    bn, bv = twisted_bound(n, ln)
    rep.add("twisted curves", c0, bn)
    rep.add("twisted vertices", v0, bv)
    rep.add("hexagons", d.pre_census.get("hexagons", 0), max(n - 2, 0))
    c1, v1 = d.complexity()
    nn, nv = nice_bound(n, ln)
    rep.add("nice curves", c1, nn)
    rep.add("nice vertices", v1, nv)
    rep.add("genus", d.genus, max(n - 2, 0))
    if generators is not None:
        # one point on each alpha curve: AM-GM over the alpha curves, not over n
        k = len(d.surface.alphas)
        rep.add("generators", generators, Fraction(v1, k) ** k if k else 1)
    return rep
