"""Diff two bigraded hat tables, optionally through the mirror."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..floer import BigradedModule


def mirror_ranks(ranks: dict) -> dict:
    """HFK-hat of the mirror: (A, M) -> (-A, -M)."""
    return {(tuple(-a for a in A), -m): r for (A, m), r in ranks.items()}


@dataclass
class Report:
    ok: bool
    mirrored: bool
    lines: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"ok": self.ok, "mirrored": self.mirrored, "diff": self.lines}


def _diff(a: dict, b: dict) -> list:
    out = []
    for key in sorted(set(a) | set(b)):
        ra, rb = a.get(key, 0), b.get(key, 0)
        if ra != rb:
            A, m = key
            out.append(f"A={','.join(map(str, A))} M={m}: main {ra} oracle {rb}")
    return out


def compare(main: BigradedModule, oracle: BigradedModule, allow_mirror: bool = False) -> Report:
    lines = _diff(main.ranks, oracle.ranks)
    if not lines:
        return Report(True, False)
    if allow_mirror:
        alt = _diff(mirror_ranks(main.ranks), oracle.ranks)
        if not alt:
            return Report(True, True)
    return Report(False, False, lines)
