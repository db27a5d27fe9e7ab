"""Tilde, hat and minus knot Floer homology of a few braid closures."""

from braidhfk import compute, parse_braid


def show(text, n, flavor, **kw):
    r = compute(parse_braid(text, n), flavor, **kw)
    cells = ", ".join(f"({','.join(map(str, A))}; {m})x{k}" if k > 1 else f"({','.join(map(str, A))}; {m})"
                      for (A, m), k in sorted(r.module.ranks.items()))
    print(f"{flavor:5s} [{text or 'empty'}] on {n}: {cells}")
    for A, m, k in r.module.towers:
        print(f"      tower top ({A[0]}, {m}) {'free' if k is None else f'U^{k} torsion'}")


# sigma_1^3 closes to the right-handed trefoil; --mirror gives the left one.
show("1 1 1", 2, "hat")
show("1 1 1", 2, "hat", mirror=True)
show("1 1 1", 2, "tilde")
show("1 1 1", 2, "minus")

show("1 -2 1 -2", 3, "hat")
show("1 -2 1 -2", 3, "minus")

# Links get one Alexander grading per component (half-integers for the Hopf link).
show("1 1", 2, "hat")
show("", 3, "hat")

# T(3,4) needs a stabilized genus-one diagram.
r = compute(parse_braid("1 2 1 2 1 2 1 2", 3), "hat")
print(f"\nT(3,4): genus {r.diagram.genus}, {len(r.generators)} generators, rank {r.module.total_rank()}")
print("timings", {k: round(v, 3) for k, v in r.timings.items()})
