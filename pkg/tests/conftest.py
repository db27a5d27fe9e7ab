import sys
from fractions import Fraction

import pytest

from braidhfk.braid import parse_braid


def word(text, n=None):
    return parse_braid(text, n)


def table(*rows):
    """{((A,), M): rank} from (A, M) or (A, M, rank) tuples."""
    out = {}
    for r in rows:
        a, m, k = (*r, 1) if len(r) == 2 else r
        out[((Fraction(a),), Fraction(m))] = k
    return out


@pytest.fixture
def W():
    return word


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if not mod or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n, (ok, detail) in sorted(mod.RESULTS.items()):
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
