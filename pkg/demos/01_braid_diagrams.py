"""Build braid Heegaard diagrams and watch them grow.

Run: python3 demos/01_braid_diagrams.py
"""

from braidhfk.braid import parse_braid
from braidhfk.diagram import base_diagram, build_diagram
from braidhfk.diagram.bounds import check_bounds

# The trivial braid on n strands: n-1 alpha curves, each meeting its beta twice.
for n in (1, 2, 4):
    print(f"B_{n} identity: complexity {base_diagram(n).complexity()}")

# Each letter twists the betas; the trace records vertex counts after the twist.
d = build_diagram(parse_braid("1 1 1", 2))
print("\ntrefoil trace:", [(t.letter, t.v_before, t.v_after) for t in d.trace])

# A pseudo-Anosov word grows like the golden ratio squared per pair of letters.
d = build_diagram(parse_braid("-2 1 " * 6, 3))
print("pseudo-Anosov vertices:", [t.v_after for t in d.trace])

# (s1 s2)^4 leaves one hexagon; a handle plus finger moves make it nice.
w = parse_braid("1 2 1 2 1 2 1 2", 3)
raw = build_diagram(w, stabilize=False)
nice = build_diagram(w)
print(f"\nT(3,4) before: {raw.pre_census}, nice={raw.is_nice()}")
print(f"T(3,4) after: complexity {nice.complexity()}, genus {nice.genus}, nice={nice.is_nice()}")

for name, measured, bound, ok in check_bounds(nice).checks:
    print(f"  {name:20s} {measured:>6} <= {bound}")

js = nice.surface.to_json()
print(f"\nserialized: {len(js['halfEdges'])} half-edges, alphas {js['alphas']}, z {js['z']}")
