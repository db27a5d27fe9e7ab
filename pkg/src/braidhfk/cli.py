"""Command-line frontend: compute, stats, bench-torus, verify, oracle-compare."""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time
from fractions import Fraction
from pathlib import Path

from .braid import BraidParseError, parse_braid, reverse_invert
from .chains import DEFAULT_GENERATOR_CAP, enumerate_generators
from .diagram import GuardrailError, StructuralError, build_diagram
from .diagram.bounds import check_bounds, full_twist_growth, torus_bound
from .floer import FLAVORS, UnsupportedFlavor, compute

EXIT_OK, EXIT_PARSE, EXIT_GUARDRAIL, EXIT_INVARIANT = 0, 2, 3, 4

log = logging.getLogger("braidhfk")


class InvariantViolation(Exception):
    pass


def _positive(text):
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _fmt(q) -> str:
    return str(Fraction(q))


def _emit(args, text: str):
    if getattr(args, "out", None):
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _word(args):
    w = parse_braid(args.braid, args.strands)
    return reverse_invert(w) if getattr(args, "mirror", False) else w


def cmd_compute(args) -> int:
    w = parse_braid(args.braid, args.strands)
    res = compute(w, args.flavor, mirror=args.mirror, vertex_limit=args.vertex_limit,
                  generator_cap=args.generator_cap, jobs=args.jobs)
    if args.gradings_csv:
        Path(args.gradings_csv).write_text(res.gradings.to_csv())
    if args.diagram_json:
        Path(args.diagram_json).write_text(_dump(res.diagram.surface.to_json()))
    if args.format == "json":
        _emit(args, _dump(res.to_json(timings=args.timings)))
        return EXIT_OK
    lines = [f"braid {res.word} on {res.word.strands} strands, {res.components} component(s)",
             f"diagram complexity {tuple(res.diagram.complexity())}, genus {res.diagram.genus}",
             f"generators {len(res.generators)}", f"{res.flavor} homology:"]
    for (A, m), r in sorted(res.module.ranks.items()):
        lines.append(f"  A=({', '.join(map(_fmt, A))}) M={_fmt(m)}  rank {r}")
    for A, m, k in res.module.towers:
        kind = "free" if k is None else f"U^{k}-torsion"
        lines.append(f"  tower top A={_fmt(A[0])} M={_fmt(m)} {kind}")
    t = res.transverse
    lines.append(f"transverse generator A=({', '.join(map(_fmt, res.gradings.alexander[t]))})"
                 f" M={_fmt(res.gradings.maslov[t])}")
    if args.timings:
        lines.append("timings " + " ".join(f"{k}={v:.3f}s" for k, v in res.timings.items()))
    _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_stats(args) -> int:
    w = _word(args)
    d = build_diagram(w, vertex_limit=args.vertex_limit)
    rep = check_bounds(d)
    report = {
        "word": str(w), "strands": w.strands,
        "trace": [{"letter": list(t.letter), "gamma": t.gamma, "verticesBefore": t.v_before,
                   "verticesAfter": t.v_after} for t in d.trace],
        "twistedComplexity": list(d.pre_complexity),
        "census": d.pre_census,
        "complexity": list(d.complexity()),
        "genus": d.genus,
        "nice": d.is_nice(),
        "bounds": [{"check": c, "measured": m, "bound": b, "ok": ok} for c, m, b, ok in rep.checks],
    }
    if args.diagram:
        report["diagram"] = d.surface.to_json()
    if args.format == "json":
        _emit(args, _dump(report))
    else:
        lines = [f"braid {w} on {w.strands} strands"]
        for k, t in enumerate(d.trace, 1):
            lines.append(f"  {k:3d} s{t.letter[0]}^{t.letter[1]:+d}  gamma={t.gamma}  "
                         f"v {t.v_before} -> {t.v_after}")
        lines.append(f"census {d.pre_census}")
        lines.append(f"complexity {tuple(d.pre_complexity)} -> {tuple(d.complexity())}, "
                     f"genus {d.genus}, nice {d.is_nice()}")
        for c, m, b, ok in rep.checks:
            lines.append(f"  {'ok  ' if ok else 'FAIL'} {c}: {m} <= {b}")
        _emit(args, "\n".join(lines) + "\n")
    if not rep.ok:
        raise InvariantViolation("bound violated: " + ", ".join(c[0] for c in rep.violations()))
    return EXIT_OK


def cmd_bench_torus(args) -> int:
    q = args.q
    if q < 2:
        raise BraidParseError("bench-torus needs q >= 2")
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    cols = ["p", "q", "alphas", "vertices", "generators", "seconds", "boundAlphas",
            "boundVertices", "within", "twistGrowth", "growthBound", "status"]
    if args.homology:
        cols.insert(6, "hatRank")
    out.writerow(cols)
    seen, bad = {}, False
    for p in range(args.p_min, args.p_max + 1):
        w = parse_braid(" ".join(str(i) for _ in range(p) for i in range(1, q)), q)
        t0 = time.perf_counter()
        row = {"p": p, "q": q, "status": "ok"}
        try:
            d = build_diagram(w, vertex_limit=args.vertex_limit)
            gens = enumerate_generators(d, cap=args.generator_cap)
            if args.homology:
                row["hatRank"] = compute(w, "hat", generator_cap=args.generator_cap,
                                         jobs=args.jobs).module.total_rank()
        except GuardrailError as exc:
            row["status"] = f"skipped: {exc}"
            out.writerow([row.get(c, "") for c in cols])
            continue
        ba, bv = torus_bound(p, q)
        v = d.complexity()[1]
        seen[p] = v
        row.update(alphas=len(d.surface.alphas), vertices=v, generators=len(gens),
                   seconds=f"{time.perf_counter() - t0:.3f}" if args.timings else "",
                   boundAlphas=ba, boundVertices=f"{bv:g}")
        within = len(d.surface.alphas) <= ba and v <= bv
        if p % q == 0 and p - q in seen:
            growth = v - seen[p - q]
            row.update(twistGrowth=growth, growthBound=full_twist_growth(q))
            within = within and growth <= full_twist_growth(q)
        row["within"] = within
        bad = bad or not within
        out.writerow([row.get(c, "") for c in cols])
    _emit(args, buf.getvalue())
    if bad:
        raise InvariantViolation("a torus row exceeds its complexity bound")
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import Corpus, run

    corpus = Corpus(args.max_strands, args.max_length, args.samples, args.seed, args.markov,
                    not args.no_fixtures)
    if not corpus.words() and not corpus.fixtures:
        log.warning("empty corpus: nothing to check")
    summary = run(corpus, inject_fault=args.inject_fault)
    if args.format == "json":
        _emit(args, _dump({"ok": summary.ok,
                           "checks": {k: {"pass": a, "fail": b} for k, (a, b) in summary.table().items()},
                           "failures": [{"word": w, "check": c, "detail": d}
                                        for w, c, ok, d in summary.rows if not ok]}))
    else:
        lines = [f"{'check':<24}{'pass':>6}{'fail':>6}"]
        for k, (a, b) in summary.table().items():
            lines.append(f"{k:<24}{a:>6}{b:>6}")
        for w, c, ok, d in summary.rows:
            if not ok:
                lines.append(f"FAIL {c} on [{w}] {d}")
        lines.append("all checks passed" if summary.ok else "verification FAILED")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if summary.ok else EXIT_INVARIANT


def cmd_oracle_compare(args) -> int:
    from .oracle import GridDiagram, compare, golden, grid_hfk
    from .oracle.grid import FIXTURES

    if args.grid in FIXTURES:
        oracle = golden(args.grid)
    else:
        try:
            oracle = grid_hfk(GridDiagram.from_json(json.loads(Path(args.grid).read_text())))
        except (OSError, KeyError, TypeError, ValueError) as exc:
            raise BraidParseError(f"cannot read grid {args.grid!r}: {exc}") from None
    w = parse_braid(args.braid, args.strands)
    res = compute(w, "hat", mirror=args.mirror, vertex_limit=args.vertex_limit,
                  generator_cap=args.generator_cap, jobs=args.jobs)
    rep = compare(res.module, oracle, allow_mirror=args.allow_mirror)
    if args.format == "json":
        _emit(args, _dump({"word": str(res.word), "grid": args.grid, **rep.to_json()}))
    else:
        status = "match" + (" (through the mirror)" if rep.mirrored else "") if rep.ok else "MISMATCH"
        _emit(args, "\n".join([f"{res.word} vs {args.grid}: {status}", *rep.lines]) + "\n")
    return EXIT_OK if rep.ok else EXIT_INVARIANT


def _braid_args(p, mirror=True):
    p.add_argument("--braid", required=True, help='letters like "1 -2 1", or a JSON object')
    p.add_argument("--strands", type=_positive, help="defaults to one more than the largest index")
    if mirror:
        p.add_argument("--mirror", action="store_true", help="use the reversed inverted word")


def _common(p):
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--vertex-limit", type=_positive, default=10**6)
    p.add_argument("--generator-cap", type=_positive, default=DEFAULT_GENERATOR_CAP)
    p.add_argument("--jobs", type=_positive, default=1, help="worker processes for the differential")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="braidhfk", description=__doc__)
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="knot Floer homology of a braid closure")
    _braid_args(p)
    _common(p)
    p.add_argument("--flavor", choices=FLAVORS, default="hat")
    p.add_argument("--timings", action="store_true", help="report wall-clock time per stage")
    p.add_argument("--gradings-csv", help="also write the generator gradings as CSV")
    p.add_argument("--diagram-json", help="also write the nice diagram as JSON")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("stats", help="diagram trace, census and bound checks")
    _braid_args(p)
    _common(p)
    p.add_argument("--diagram", action="store_true", help="include the serialized diagram")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("bench-torus", help="complexity sweep over (s1 ... s_{q-1})^p")
    _common(p)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--p-min", type=_positive, default=1)
    p.add_argument("--p-max", type=_positive, required=True)
    p.add_argument("--homology", action="store_true", help="also compute the hat rank")
    p.add_argument("--timings", action="store_true", help="fill the seconds column")
    p.set_defaults(func=cmd_bench_torus)

    p = sub.add_parser("verify", help="property suite on a random corpus")
    _common(p)
    p.add_argument("--max-strands", type=int, default=4)
    p.add_argument("--max-length", type=int, default=6)
    p.add_argument("--samples", type=int, default=12)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--markov", type=int, default=1, help="Markov variants per word")
    p.add_argument("--no-fixtures", action="store_true", help="skip the grid oracle fixtures")
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle-compare", help="compare against grid diagram homology")
    _braid_args(p)
    _common(p)
    p.add_argument("--grid", required=True, help="fixture name or path to a grid JSON file")
    p.add_argument("--allow-mirror", action="store_true", help="also accept the mirrored table")
    p.set_defaults(func=cmd_oracle_compare)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (BraidParseError, UnsupportedFlavor) as exc:
        log.error("%s", exc)
        return EXIT_PARSE
    except GuardrailError as exc:
        log.error("guardrail: %s", exc)
        return EXIT_GUARDRAIL
    except (StructuralError, InvariantViolation) as exc:
        log.error("invariant violated: %s", exc)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
