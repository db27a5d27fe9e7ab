"""Braid words and the combinatorics of their closures."""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass


class BraidParseError(ValueError):
    """Raised for malformed braid input."""


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise ValueError("strand count must be positive")
        for i, s in self.letters:
            if not 1 <= i <= self.strands - 1 or s not in (1, -1):
                raise ValueError(f"bad letter {(i, s)} for {self.strands} strands")

    def __len__(self):
        return len(self.letters)

    @property
    def length(self) -> int:
        return len(self.letters)

    def tokens(self) -> list[int]:
        return [i * s for i, s in self.letters]

    def __str__(self):
        return " ".join(str(t) for t in self.tokens())

    def to_json(self) -> dict:
        return {"strands": self.strands, "word": self.tokens()}


_TOKEN = re.compile(r"^(-?\d+|[sS]\d+)$")


def parse_braid_word(text: str, strands: int) -> BraidWord:
    """Parse `1 -2 s3 S1` style text; `sK` is a positive and `SK` a negative letter."""
    letters = []
    for pos, tok in enumerate(t for t in re.split(r"[\s,]+", text.strip()) if t):
        if not _TOKEN.match(tok):
            raise BraidParseError(f"malformed token {tok!r} at position {pos}")
        if tok[0] in "sS":
            i, s = int(tok[1:]), (1 if tok[0] == "s" else -1)
        else:
            v = int(tok)
            i, s = abs(v), (1 if v > 0 else -1)
        if i == 0 or i >= strands:
            raise BraidParseError(f"token {tok!r} at position {pos} is out of range for {strands} strands")
        letters.append((i, s))
    return BraidWord(strands, tuple(letters))


def parse_braid_json(text: str) -> BraidWord:
    try:
        obj = json.loads(text)
        n = int(obj["strands"])
        word = [int(v) for v in obj["word"]]
    except (ValueError, KeyError, TypeError) as exc:
        raise BraidParseError(f"bad JSON braid: {exc}") from None
    return parse_braid_word(" ".join(map(str, word)), n)


def parse_braid(text: str, strands: int | None = None) -> BraidWord:
    """Accept either the JSON object form or token text (which needs `strands`)."""
    if text.lstrip().startswith("{"):
        return parse_braid_json(text)
    if strands is None:
        toks = [abs(int(t.lstrip("sS"))) for t in re.split(r"[\s,]+", text.strip())
                if t and _TOKEN.match(t)]
        strands = max(toks, default=0) + 1
    return parse_braid_word(text, strands)


@dataclass(frozen=True)
class ClosureStructure:
    permutation: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]

    @property
    def component_count(self) -> int:
        return len(self.components)

    def component_of(self, strand: int) -> int:
        for c, cyc in enumerate(self.components):
            if strand in cyc:
                return c
        raise KeyError(strand)


def closure_structure(w: BraidWord) -> ClosureStructure:
    # position -> strand currently there; strands are 1-based
    perm = list(range(1, w.strands + 1))
    for i, _ in w.letters:
        perm[i - 1], perm[i] = perm[i], perm[i - 1]
    seen, cycles = set(), []
    for start in range(1, w.strands + 1):
        if start in seen:
            continue
        cyc, k = [], start
        while k not in seen:
            seen.add(k)
            cyc.append(k)
            k = perm[k - 1]
        cycles.append(tuple(cyc))
    return ClosureStructure(tuple(perm), tuple(cycles))


def reverse_invert(w: BraidWord) -> BraidWord:
    """Word whose closure is the mirror of the closure of `w`."""
    return BraidWord(w.strands, tuple((i, -s) for i, s in reversed(w.letters)))


def stabilize(w: BraidWord, sign: int = 1) -> BraidWord:
    return BraidWord(w.strands + 1, w.letters + ((w.strands, sign),))


def conjugate(w: BraidWord, i: int, s: int) -> BraidWord:
    return BraidWord(w.strands, ((i, s),) + w.letters + ((i, -s),))


def markov_variants(w: BraidWord, seed: int, count: int,
                    max_moves: int = 3, max_strands: int | None = None) -> list[BraidWord]:
    """Random words with the same closure, via conjugations and positive stabilizations.

    `count == 0` returns `[w]`.
    """
    if count == 0:
        return [w]
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        v = w
        for _ in range(rng.randint(1, max_moves)):
            can_stab = max_strands is None or v.strands < max_strands
            if v.strands >= 2 and (not can_stab or rng.random() < 0.6):
                v = conjugate(v, rng.randint(1, v.strands - 1), rng.choice((1, -1)))
            else:
                v = stabilize(v)
        out.append(v)
    return out


def random_word(rng: random.Random, strands: int, length: int) -> BraidWord:
    return BraidWord(strands, tuple((rng.randint(1, strands - 1), rng.choice((1, -1)))
                                   for _ in range(length)))
