"""The command-line interface, driven from Python (same as running `braidhfk ...`)."""

from braidhfk.cli import main

for argv in (
    ["compute", "--strands", "2", "--braid", "1 1 1", "--flavor", "hat"],
    ["compute", "--strands", "1", "--braid", "", "--flavor", "minus"],
    ["stats", "--strands", "4", "--braid", ""],
    ["bench-torus", "--q", "3", "--p-max", "6"],
    ["oracle-compare", "--braid", "1 -2 1 -2", "--grid", "figure_eight"],
    ["verify", "--samples", "4"],
    ["compute", "--braid", "1 1", "--flavor", "minus"],  # exits 2: minus needs a knot
):
    print("$ braidhfk", " ".join(repr(a) if " " in a or not a else a for a in argv))
    print(f"(exit {main(argv)})\n")
