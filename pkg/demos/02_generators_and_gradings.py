"""Generators, domains and gradings of a nice braid diagram."""

from braidhfk.braid import parse_braid
from braidhfk.chains import (absolute_gradings, build_incidence, chain_data, enumerate_generators,
                             periodic_domains, relative_gradings, transverse_generator)
from braidhfk.diagram import build_diagram
from braidhfk.floer import differential

d = build_diagram(parse_braid("1 -2 1 -2", 3))
gens = enumerate_generators(d)
print(f"figure-eight diagram {d.complexity()}: {len(gens)} generators")

# The incidence operator sends a domain to its corner signs; its kernel is
# spanned by the alpha and beta periodic domains.
D = build_incidence(d)
A, B = periodic_domains(d)
print(f"incidence {D.matrix.nrows()}x{D.matrix.ncols()}, nullity {D.nullity}, "
      f"{len(A)} alpha and {len(B)} beta periodic domains")

rel = relative_gradings(d, gens)
entries = differential(d, gens, rel)
table = absolute_gradings(d, gens, rel, entries)
print(f"{len(entries)} disks; with a U power: {sum(1 for e in entries if e.degree)}")

cd = chain_data(d)
print("\nfirst few generators (vertex ids, A, M):")
for g, A_, M in list(zip(gens, table.alexander, table.maslov))[:5]:
    print(f"  {g.vertices}  A={tuple(map(str, A_))}  M={M}")

x = transverse_generator(d)
i = gens.index(x)
print(f"\ntransverse generator {x.vertices}: A={tuple(map(str, table.alexander[i]))} M={table.maslov[i]}")
print(table.to_csv().splitlines()[0], "...")
