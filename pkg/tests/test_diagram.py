import random

import jsonschema
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from braidhfk.braid import random_word
from braidhfk.diagram import (GuardrailError, StructuralError, base_diagram, build_diagram,
                              classify_regions, finger_move)
from braidhfk.diagram.bounds import check_bounds, full_twist_growth, torus_bound
from braidhfk.schemas import load

from conftest import word


@pytest.mark.parametrize("n", [1, 2, 3, 4, 7, 12])
def test_base_complexity(n):
    d = base_diagram(n)
    assert d.complexity() == (n, 2 * (n - 1))
    assert d.genus == 0


def test_base_alpha_meets_its_beta_twice():
    S = base_diagram(4).surface
    for i, (a, b) in enumerate(zip(S.alphas, S.betas)):
        assert len(S.intersections(a, b)) == 2
        for j, b2 in enumerate(S.betas):
            if j != i:
                assert not S.intersections(a, b2)


def test_identity_b4_stats():
    d = base_diagram(4)
    assert d.complexity() == (4, 6)
    assert classify_regions(d)["hexagons"] == 0


def test_trefoil_trace():
    d = build_diagram(word("1 1 1", 2))
    assert [t.v_after for t in d.trace] == [4, 6, 8]
    assert all(t.v_after <= t.v_before + 12 * t.gamma for t in d.trace)
    assert d.is_nice() and d.genus == 0


def test_pseudo_anosov_growth_is_exponential():
    d = build_diagram(word("-2 1 " * 6, 3), stabilize=False)
    vs = [t.v_after for t in d.trace]
    ratios = [b / a for a, b in zip(vs[4:], vs[5:])]
    assert min(ratios) > 1.5
    assert vs[-1] > 1000


def test_hexagon_is_stabilized_away():
    w = word("1 2 1 2 1 2 1 2", 3)
    d = build_diagram(w, stabilize=False)
    assert d.pre_census["hexagons"] == 1 and not d.is_nice()
    d = build_diagram(w)
    assert d.is_nice() and d.genus == 1
    assert len(d.surface.alphas) == 3
    d.surface.check()


def test_full_twists_have_no_hexagons():
    for q in (3, 4):
        full = " ".join(str(i) for _ in range(q) for i in range(1, q))
        d = build_diagram(word(full, q), stabilize=False)
        assert d.pre_census["hexagons"] == 0


def test_full_twist_growth():
    vs = []
    for k in (1, 2, 3):
        d = build_diagram(word(" ".join("1 2" for _ in range(3 * k)), 3))
        vs.append(d.complexity()[1])
        assert len(d.surface.alphas) <= torus_bound(3 * k, 3)[0]
        assert d.complexity()[1] <= torus_bound(3 * k, 3)[1]
    assert vs == [20, 36, 52]
    assert all(b - a <= full_twist_growth(3) for a, b in zip(vs, vs[1:]))


def test_vertex_guardrail():
    with pytest.raises(GuardrailError):
        build_diagram(word("-2 1 " * 10, 3), vertex_limit=100)


def test_finger_move_rejects_bad_edges():
    S = build_diagram(word("1 1 1", 2)).surface
    h = next(iter(S.origin))
    with pytest.raises(StructuralError):
        finger_move(S, h, h)


def test_serialization():
    d = build_diagram(word("1 2 1 2 1 2 1 2", 3))
    js = d.surface.to_json()
    jsonschema.validate(js, load("diagram"))
    edges = {e["id"]: e for e in js["halfEdges"]}
    for e in edges.values():
        assert edges[e["twin"]]["twin"] == e["id"]
        assert edges[e["twin"]]["curve"] == e["curve"]
        assert edges[e["next"]]["region"] == e["region"]
    assert len({e["next"] for e in edges.values()}) == len(edges)
    assert js["genus"] == 1 and len(js["vertices"]) == d.complexity()[1]
    assert build_diagram(word("1 2 1 2 1 2 1 2", 3)).surface.to_json() == js


braids = st.integers(1, 4).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, 6),
                                                       st.integers(0, 10**6)))


@settings(max_examples=30, deadline=None)
@given(braids)
def test_random_words_nice_and_bounded(args):
    n, ln, seed = args
    w = random_word(random.Random(seed), n, ln if n > 1 else 0)
    d = build_diagram(w)
    assert d.is_nice()
    assert d.pre_census["hexagons"] <= max(n - 2, 0)
    rep = check_bounds(d)
    assert rep.ok, rep.violations()
    d.surface.check()
