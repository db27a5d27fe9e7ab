"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line; the lines are printed at the end of the
pytest run (see conftest.py) and when this file is run as a script.
"""

import random
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from braidhfk import compute
from braidhfk.braid import closure_structure, markov_variants, parse_braid, random_word
from braidhfk.diagram import base_diagram, build_diagram
from braidhfk.diagram.bounds import check_bounds, full_twist_growth, torus_bound
from braidhfk.floer import hat_from_tilde, verify_d_squared
from braidhfk.oracle import alexander_from_burau, compare, grid_hfk, load_fixture
from braidhfk.verify import euler_poly, symmetric

RESULTS = {}
F = Fraction


def record(n, ok, detail):
    RESULTS[n] = (ok, detail)
    assert ok, detail


def hat(text, n, **kw):
    return compute(parse_braid(text, n), "hat", **kw)


# -- shared corpus ------------------------------------------------------------------

_CORPUS = []


def corpus(size=200, seed=2024):
    """Random knot-closure words with at most 4 strands and length at most 6, with results."""
    if not _CORPUS:
        rng = random.Random(seed)
        seen = set()
        while len(_CORPUS) < size:
            n = rng.randint(1, 4)
            w = random_word(rng, n, rng.randint(0, 6) if n > 1 else 0)
            if closure_structure(w).component_count != 1 or (w in seen and n > 1):
                continue
            seen.add(w)
            _CORPUS.append((w, compute(w, "tilde")))
    return _CORPUS


# -- criteria -----------------------------------------------------------------------


def test_01_unknot():
    t0 = time.perf_counter()
    b1 = hat("", 1).module.ranks
    towers = compute(parse_braid("", 1), "minus").module.towers
    b3 = hat("", 3).module
    dt = time.perf_counter() - t0
    ok1 = b1 == {((F(0),), F(0)): 1} and towers == [((F(0),), F(0), None)]
    ok3 = b3.total_rank() == 1
    record(1, ok1 and ok3 and dt < 1,
           f"B1 ok={ok1}; B3 empty word closes to the 3-component unlink, hat rank "
           f"{b3.total_rank()} (criterion expects 1); {dt:.2f}s")


def test_02_base_complexity():
    t0 = time.perf_counter()
    bad = [n for n in range(1, 51) if base_diagram(n).complexity() != (n, 2 * (n - 1))]
    dt = time.perf_counter() - t0
    record(2, not bad and dt < 1, f"mismatches {bad}; {dt:.2f}s")


def test_03_trefoil():
    t0 = time.perf_counter()
    ranks = hat("1 1 1", 2).module.ranks
    support = sorted(int(a[0]) for a, _ in ranks)
    oracle = grid_hfk(load_fixture("trefoil"))
    rep = compare(hat("1 1 1", 2, mirror=True).module, oracle)
    dt = time.perf_counter() - t0
    ok = set(ranks.values()) == {1} and support == [-1, 0, 1] and rep.ok
    record(3, ok and dt < 10, f"support {support}, mirror vs 5x5 grid ok={rep.ok}; {dt:.2f}s")


def test_04_figure_eight():
    t0 = time.perf_counter()
    m = hat("1 -2 1 -2", 3).module
    rep = compare(m, grid_hfk(load_fixture("figure_eight")))
    dt = time.perf_counter() - t0
    ok = m.total_rank() == 5 and symmetric(m.ranks) and rep.ok
    record(4, ok and dt < 30, f"rank {m.total_rank()}, 6x6 grid ok={rep.ok}; {dt:.2f}s")


def test_05_t25():
    t0 = time.perf_counter()
    m = hat("1 1 1 1 1", 2).module
    width = max(a[0] for a, _ in m.ranks) - min(a[0] for a, _ in m.ranks)
    g = load_fixture("t25")
    rep = compare(hat("1 1 1 1 1", 2, mirror=True).module, grid_hfk(g))
    dt = time.perf_counter() - t0
    ok = m.total_rank() == 5 and width == 4 and rep.ok and g.size == 7
    record(5, ok and dt < 300, f"rank {m.total_rank()}, width {width}, mirror vs 7x7 grid "
                               f"ok={rep.ok}; {dt:.2f}s")


def test_06_euler_vs_burau():
    t0 = time.perf_counter()
    bad = []
    for w, r in corpus():
        chi = euler_poly(hat_from_tilde(r.module, r.counts).ranks)
        want = {F(a): c for a, c in alexander_from_burau(w).items()}
        if chi != want:
            bad.append(str(w))
    dt = time.perf_counter() - t0
    record(6, not bad and len(corpus()) >= 200 and dt < 600,
           f"{len(corpus())} knots, {len(bad)} mismatches {bad[:3]}; {dt:.1f}s")


def test_07_d_squared():
    bad = []
    for w, r in corpus():
        es = r.entries
        try:
            verify_d_squared(es)
            verify_d_squared(es, identify=True)
            verify_d_squared([e for e in es if e.degree == 0])
        except Exception as exc:  # noqa: BLE001
            bad.append(f"{w}: {exc}")
    record(7, not bad, f"{len(corpus())} complexes x 3 flavors, failures {bad[:3]}")


def test_08_bounds():
    bad = []
    for w, r in corpus():
        rep = check_bounds(r.diagram, len(r.generators))
        bad += [f"{w}: {c[0]}" for c in rep.violations()]
    record(8, not bad, f"{len(corpus())} diagrams, violations {bad[:3]}")


def test_09_markov():
    pairs, bad = 0, []
    for k, (w, _) in enumerate(corpus()[:60]):
        base = hat(" ".join(map(str, w.tokens())), w.strands).module.ranks
        for v in markov_variants(w, k, 1, max_strands=5):
            pairs += 1
            if compute(v, "hat").module.ranks != base:
                bad.append(f"{w} vs {v}")
    record(9, pairs >= 50 and not bad, f"{pairs} pairs, {len(bad)} differ {bad[:2]}")


def test_10_symmetry():
    bad = [str(w) for w, r in corpus() if not symmetric(hat_from_tilde(r.module, r.counts).ranks)]
    record(10, not bad, f"{len(corpus())} knots, asymmetric {bad[:3]}")


def test_11_torus_benchmark():
    t0 = time.perf_counter()
    q, rows, prev, ok = 3, [], None, True
    for k in (1, 2, 3):
        p = q * k
        d = build_diagram(parse_braid(" ".join("1 2" for _ in range(p)), q))
        ba, bv = torus_bound(p, q)
        v = d.complexity()[1]
        ok = ok and len(d.surface.alphas) <= ba and v <= bv
        if prev is not None:
            ok = ok and v - prev <= full_twist_growth(q)
            rows.append(f"k={k}: v={v} growth {v - prev} <= {full_twist_growth(q)}")
        else:
            rows.append(f"k={k}: v={v} <= {bv:g}")
        prev = v
    dt = time.perf_counter() - t0
    record(11, ok and dt < 300, "; ".join(rows) + f"; {dt:.2f}s")


def test_12_generator_counts():
    oracle = {3: grid_hfk(load_fixture("trefoil")).total_rank(),
              5: grid_hfk(load_fixture("t25")).total_rank(),
              # T(2,7) is alternating, so its hat rank is the sum of |Alexander coefficients|
              7: sum(abs(c) for c in alexander_from_burau(parse_braid("1 " * 7, 2)).values())}
    notes, ok = [], True
    for n in (3, 5, 7):
        r = compute(parse_braid(" ".join(["1"] * n), 2), "tilde")
        count = len(r.generators)
        ok = ok and count % 2 == 0 and r.module.total_rank() == 2 * oracle[n]
        notes.append(f"n={n}: {count} generators (stated {2 * n + 1}), "
                     f"tilde {r.module.total_rank()} = 2x{oracle[n]}")
    record(12, ok, "; ".join(notes))


def test_13_determinism(tmp_path):
    outs = []
    for k in range(2):
        p = tmp_path / f"run{k}.json"
        subprocess.run([sys.executable, "-m", "braidhfk.cli", "compute", "--braid",
                        "1 2 1 2 1 2 1 2", "--flavor", "minus", "--format", "json",
                        "--out", str(p)], check=True)
        outs.append(p.read_bytes())
    record(13, outs[0] == outs[1] and len(outs[0]) > 0, f"{len(outs[0])} bytes, identical")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
