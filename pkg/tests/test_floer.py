from fractions import Fraction

import jsonschema
import pytest

from braidhfk import UnsupportedFlavor, compute
from braidhfk.diagram import StructuralError
from braidhfk.floer import DifferentialEntry, reduce_complex, verify_d_squared
from braidhfk.oracle import grid_minus_towers, load_fixture
from braidhfk.schemas import load

from conftest import table, word

F = Fraction


def hat(text, n, **kw):
    return compute(word(text, n), "hat", **kw).module


def test_unknot_one_strand():
    assert hat("", 1).ranks == table((0, 0))
    m = compute(word("", 1), "minus").module
    assert m.towers == [((F(0),), F(0), None)]


def test_unknot_two_strands():
    # the n = 2 pointed unknot: tilde is F(0,0) + F(-1,-1)
    assert compute(word("1", 2), "tilde").module.ranks == table((0, 0), (-1, -1))
    assert hat("1", 2).ranks == table((0, 0))
    assert compute(word("1", 2), "minus").module.towers == [((F(0),), F(0), None)]


def test_right_trefoil():
    assert hat("1 1 1", 2).ranks == table((1, 0), (0, -1), (-1, -2))
    towers = compute(word("1 1 1", 2), "minus").module.towers
    assert towers == [((F(-1),), F(-2), None), ((F(1),), F(0), 1)]


def test_mirror_flag():
    a = compute(word("1 1 1", 2), "hat", mirror=True)
    b = compute(word("-1 -1 -1", 2), "hat")
    assert a.module.ranks == b.module.ranks == table((-1, 0), (0, 1), (1, 2))


def test_figure_eight():
    m = hat("1 -2 1 -2", 3)
    assert m.total_rank() == 5
    assert m.ranks == table((-1, -1), (0, 0, 3), (1, 1))


@pytest.mark.parametrize("name,text,n", [("trefoil", "-1 -1 -1", 2),
                                         ("figure_eight", "1 -2 1 -2", 3),
                                         ("t25", "-1 -1 -1 -1 -1", 2)])
def test_minus_towers_match_grid(name, text, n):
    ours = compute(word(text, n), "minus").module.towers
    assert ours == grid_minus_towers(load_fixture(name))
    assert [k for *_, k in ours].count(None) == 1


def test_hopf_link():
    # positive Hopf link: four generators with Alexander (+-1/2, +-1/2)
    h = F(1, 2)
    m = hat("1 1", 2)
    assert m.ranks == {((h, h), F(0)): 1, ((h, -h), F(-1)): 1, ((-h, h), F(-1)): 1,
                       ((-h, -h), F(-2)): 1}


@pytest.mark.parametrize("n", [2, 3])
def test_unlink(n):
    m = hat("", n)
    assert m.total_rank() == 2 ** (n - 1)
    assert max(k for _, k in m.ranks) == 0 and min(k for _, k in m.ranks) == 1 - n


def test_minus_needs_a_knot():
    with pytest.raises(UnsupportedFlavor):
        compute(word("1 1", 2), "minus")
    with pytest.raises(ValueError):
        compute(word("1", 2), "plus")


@pytest.mark.parametrize("text,n", [("1 1 1", 2), ("1 -2 1 -2", 3), ("1 1", 2),
                                    ("1 2 1 2 1 2 1 2", 3), ("", 3)])
def test_d_squared_all_flavors(text, n):
    es = compute(word(text, n), "tilde").entries
    assert verify_d_squared(es)
    assert verify_d_squared(es, identify=True)
    assert verify_d_squared([e for e in es if e.degree == 0])


def test_d_squared_detects_error():
    es = [DifferentialEntry(0, 1, (0,)), DifferentialEntry(1, 2, (0,))]
    with pytest.raises(StructuralError):
        verify_d_squared(es)


def test_tilde_is_hat_times_v():
    for text, n in [("1 -2 1 -2", 3), ("2 1 -2 -3 2", 4)]:
        r = compute(word(text, n), "tilde")
        assert r.module.total_rank() == 2 ** (n - 1) * hat(text, n).total_rank()


def test_reduce_complex_towers():
    # a -U^2-> b, c -1-> d, e free
    red = reduce_complex(5, [(0, 1, 2), (2, 3, 0)])
    assert sorted(red.pairs) == [(0, 1, 2), (2, 3, 0)]
    assert red.free == [4]
    # zigzag: a->b (1), a->c (U), d->b (U): cancelling a,b leaves d->c with U^2
    red = reduce_complex(4, [(0, 1, 0), (0, 2, 1), (3, 1, 1)])
    assert (0, 1, 0) in red.pairs and (3, 2, 2) in red.pairs


def test_parallel_matches_serial():
    a = compute(word("1 2 1 2 1 2 1 2", 3), "hat")
    b = compute(word("1 2 1 2 1 2 1 2", 3), "hat", jobs=2)
    assert a.entries == b.entries
    assert a.module.ranks == b.module.ranks


def test_result_json():
    r = compute(word("1 -2 1 -2", 3), "hat")
    js = r.to_json(timings=True)
    jsonschema.validate(js, load("compute"))
    assert js["generatorCount"] == 64 and js["components"] == 1
    assert set(js["timings"]) == {"diagram", "generators", "chains", "homology"}
    assert "timings" not in r.to_json()
