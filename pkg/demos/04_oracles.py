"""Cross-check the braid pipeline against grid diagrams and the Burau representation."""

from braidhfk import compute, parse_braid
from braidhfk.oracle import (alexander_from_burau, compare, grid_hfk, grid_minus_towers,
                             load_fixture, torus_grid)

# The grid fixtures are negative torus knots; compare the positive braids through the mirror.
for name, text, n in [("trefoil", "1 1 1", 2), ("figure_eight", "1 -2 1 -2", 3),
                      ("t25", "1 1 1 1 1", 2)]:
    grid = load_fixture(name)
    ours = compute(parse_braid(text, n), "hat", mirror=True).module
    rep = compare(ours, grid_hfk(grid))
    print(f"{name:13s} grid {grid.size}x{grid.size}: match={rep.ok}")

towers = grid_minus_towers(torus_grid(2, 3))
print("\nleft trefoil minus towers from the grid:", [(str(a[0]), str(m), k) for a, m, k in towers])

for text, n in [("1 1 1", 2), ("1 -2 1 -2", 3), ("1 2 1 2 1 2 1 2", 3)]:
    w = parse_braid(text, n)
    print(f"Alexander polynomial of [{text}]: {alexander_from_burau(w).coefficients()}")
