"""Property suite run by `braidhfk verify` over a random corpus of braid words."""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

from .braid import BraidWord, closure_structure, markov_variants, parse_braid, random_word
from .diagram import StructuralError
from .diagram.bounds import check_bounds
from .floer import compute, verify_d_squared
from .oracle import alexander_from_burau, compare, golden

# braids whose closures match the grid fixtures, up to mirror
FIXTURE_BRAIDS = {
    "unknot": ("", 1),
    "trefoil": ("1 1 1", 2),
    "figure_eight": ("1 -2 1 -2", 3),
    "t25": ("1 1 1 1 1", 2),
    "t34": ("1 2 1 2 1 2 1 2", 3),
}


@dataclass
class Corpus:
    max_strands: int = 4
    max_length: int = 6
    samples: int = 12
    seed: int = 0
    markov: int = 1
    fixtures: bool = True

    def words(self) -> list:
        rng = random.Random(self.seed)
        out = []
        if self.max_strands >= 1:
            for _ in range(self.samples):
                n = rng.randint(1, self.max_strands)
                ln = 0 if n == 1 else rng.randint(0, self.max_length)
                out.append(random_word(rng, n, ln))
        return out


@dataclass
class Summary:
    rows: list = field(default_factory=list)  # (word, check, ok, detail)

    @property
    def ok(self) -> bool:
        return all(r[2] for r in self.rows)

    def add(self, word, check, ok, detail=""):
        self.rows.append((str(word), check, bool(ok), detail))

    def table(self) -> dict:
        out = defaultdict(lambda: [0, 0])
        for _, check, ok, _ in self.rows:
            out[check][0 if ok else 1] += 1
        return dict(sorted(out.items()))


def d_squared_ok(entries: list) -> bool:
    try:
        return verify_d_squared(entries)
    except StructuralError:
        return False


def _corrupt(entries: list) -> list:
    """Drop one differential entry so that d o d no longer vanishes."""
    for i in range(len(entries)):
        trial = entries[:i] + entries[i + 1:]
        if not d_squared_ok(trial):
            return trial
    return entries


def symmetric(ranks: dict) -> bool:
    """rank(A, M) = rank(-A, M - 2 sum A)."""
    for (A, m), r in ranks.items():
        key = (tuple(-a for a in A), m - 2 * sum(A, Fraction(0)))
        if ranks.get(key, 0) != r:
            return False
    return True


def euler_poly(ranks: dict) -> dict:
    chi = defaultdict(int)
    for (A, m), r in ranks.items():
        chi[sum(A, Fraction(0))] += r * (-1 if m % 2 else 1)
    return {a: c for a, c in chi.items() if c}


def check_word(w: BraidWord, summary: Summary, markov: int = 1, seed: int = 0,
               inject_fault: bool = False, max_strands: int | None = None) -> None:
    res = compute(w, "hat")
    entries = _corrupt(res.entries) if inject_fault else res.entries
    summary.add(w, "d_squared", d_squared_ok(entries))
    rep = check_bounds(res.diagram, len(res.generators))
    summary.add(w, "bounds", rep.ok, "; ".join(c[0] for c in rep.violations()))
    summary.add(w, "symmetry", symmetric(res.module.ranks))
    if closure_structure(w).component_count == 1:
        chi = euler_poly(res.module.ranks)
        want = {Fraction(a): c for a, c in alexander_from_burau(w).items()}
        summary.add(w, "euler_vs_burau", chi == want, f"{chi} vs {want}")
    base = res.module.collapsed()
    cap = max_strands + 1 if max_strands else None
    for v in markov_variants(w, seed, markov, max_strands=cap):
        if v == w:
            continue
        other = compute(v, "hat").module.collapsed()
        summary.add(w, "markov", other == base, str(v))


def run(corpus: Corpus, inject_fault: bool = False) -> Summary:
    summary = Summary()
    for k, w in enumerate(corpus.words()):
        check_word(w, summary, corpus.markov, corpus.seed + k, inject_fault, corpus.max_strands)
    if corpus.fixtures:
        for name, (text, n) in FIXTURE_BRAIDS.items():
            res = compute(parse_braid(text, n), "hat")
            rep = compare(res.module, golden(name), allow_mirror=True)
            summary.add(res.word, f"oracle_{name}", rep.ok, "; ".join(rep.lines))
    return summary
