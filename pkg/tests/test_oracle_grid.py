from fractions import Fraction

import pytest

from braidhfk.diagram import GuardrailError
from braidhfk.oracle import (GridDiagram, alexander_from_burau, golden, grid_hfk,
                             grid_minus_towers, grid_tilde, load_fixture, torus_grid)
from braidhfk.oracle.grid import FIXTURES, grid_complex

from conftest import table, word

F = Fraction


def euler(ranks):
    out = {}
    for (A, m), r in ranks.items():
        out[int(A[0])] = out.get(int(A[0]), 0) + r * (-1) ** int(m)
    return {a: c for a, c in out.items() if c}


def test_grid_validation():
    with pytest.raises(ValueError):
        GridDiagram(2, (0, 0), (1, 0))
    with pytest.raises(ValueError):
        GridDiagram(2, (0, 1), (0, 1))


def test_components():
    assert torus_grid(2, 3).components() == 1
    assert torus_grid(2, 4).components() == 2
    assert load_fixture("figure_eight").components() == 1


def test_unknot_grid():
    assert grid_hfk(load_fixture("unknot")).ranks == table((0, 0))


def test_tilde_is_hat_times_v():
    g = load_fixture("trefoil")
    assert grid_tilde(g).total_rank() == 2 ** (g.size - 1) * grid_hfk(g).total_rank()


# textbook tables; the fixture grids are the negative torus knots
def test_left_trefoil():
    assert grid_hfk(load_fixture("trefoil")).ranks == table((-1, 0), (0, 1), (1, 2))


def test_figure_eight():
    assert grid_hfk(load_fixture("figure_eight")).ranks == table((-1, -1), (0, 0, 3), (1, 1))


@pytest.mark.parametrize("name,braid", [("trefoil", ("1 1 1", 2)),
                                        ("figure_eight", ("1 -2 1 -2", 3)),
                                        ("t25", ("1 1 1 1 1", 2))])
def test_euler_characteristic_is_burau(name, braid):
    chi = euler(golden(name).ranks)
    assert chi == dict(alexander_from_burau(word(*braid)))


@pytest.mark.parametrize("name", ["unknot", "trefoil", "figure_eight"])
def test_golden_files_are_current(name):
    assert golden(name).ranks == grid_hfk(load_fixture(name)).ranks


def test_golden_t34():
    # T(3,4): ranks 1 in Alexander gradings 3, 2, 0, -2, -3
    g = golden("t34")
    assert g.total_rank() == 5
    assert sorted(int(a[0]) for a, _ in g.ranks) == [-3, -2, 0, 2, 3]


def test_minus_towers():
    assert grid_minus_towers(load_fixture("unknot")) == [((F(0),), F(0), None)]
    towers = grid_minus_towers(load_fixture("trefoil"))
    assert [k for *_, k in towers].count(None) == 1
    assert towers == [((F(1),), F(2), None), ((F(0),), F(1), 1)]


def test_size_guardrail():
    with pytest.raises(GuardrailError):
        grid_complex(torus_grid(4, 5))


def test_fixture_names():
    for name in FIXTURES:
        assert load_fixture(name).components() == 1
