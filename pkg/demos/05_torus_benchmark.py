"""Complexity of nice diagrams for (s1 ... s_{q-1})^p against the torus bound."""

import time

from braidhfk import compute, parse_braid
from braidhfk.diagram import build_diagram
from braidhfk.diagram.bounds import full_twist_growth, torus_bound

for q in (3, 4):
    prev = None
    print(f"q = {q}: full-twist growth bound {full_twist_growth(q)}")
    for k in (1, 2, 3):
        p = q * k
        w = parse_braid(" ".join(str(i) for _ in range(p) for i in range(1, q)), q)
        d = build_diagram(w)
        v = d.complexity()[1]
        ba, bv = torus_bound(p, q)
        grow = "" if prev is None else f", growth {v - prev}"
        print(f"  p={p:2d}: alphas {len(d.surface.alphas)} <= {ba}, vertices {v} <= {bv:g}{grow}")
        prev = v

t = time.perf_counter()
r = compute(parse_braid("1 1 1 1 1 1 1", 2), "hat")
print(f"\nT(2,7) hat rank {r.module.total_rank()} in {time.perf_counter() - t:.2f}s")
