import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from gridctl.analysis import suggest_nodes
from gridctl.config import MP
from gridctl.errors import NodeRangeError, NotSimpleGridError, UsageError
from gridctl.grid import GridSpec, build_grid_laplacian
from gridctl.oracle import numeric_eigensystem, pbh_uncontrollable
from gridctl.simple_grid import (
    build_partition,
    grid_node_uncontrollable_simple,
    simple_grid_controllable,
    suggest_control_nodes,
)
from gridctl.spectral import grid_spectrum, is_simple

G715 = GridSpec((7, 15))


def test_per_axis_blocking():
    assert grid_node_uncontrollable_simple(G715, (1, 2)) == ((), (3,))
    assert grid_node_uncontrollable_simple(G715, (4, 1)) == ((7,), ())
    assert grid_node_uncontrollable_simple(G715, (1, 1)) == ((), ())
    with pytest.raises(NodeRangeError):
        grid_node_uncontrollable_simple(G715, (8, 1))


def test_partition_pairs():
    e = {x.node: x.pairs for x in build_partition(G715, [(1, 2), (4, 1), (1, 1)])}
    assert e[(1, 2)] == {(7, 3)}
    assert e[(4, 1)] == {(7, 3), (7, 5)}
    assert e[(1, 1)] == frozenset()


def test_partition_needs_nodes():
    with pytest.raises(UsageError):
        build_partition(G715, [])


def test_worked_example_not_controllable():
    v = simple_grid_controllable(G715, [(1, 2), (4, 1)])
    assert not v.controllable
    assert v.common_pairs == {(7, 3)}
    want = [1 + 2 - 2 * MP.cos(s * MP.pi / 7) for s in (1, 3, 5)]
    got = [x.numeric for x in v.uncontrollable_eigenvalues]
    assert len(got) == 3 and all(abs(a - b) < 1e-12 for a, b in zip(got, want))


def test_worked_example_controllable():
    assert simple_grid_controllable(G715, [(1, 2), (1, 3)]).controllable


def test_worked_example_three_nodes():
    assert not simple_grid_controllable(G715, [(1, 2), (1, 8), (4, 1)]).controllable


def test_non_simple_is_refused():
    with pytest.raises(NotSimpleGridError):
        simple_grid_controllable(GridSpec((2, 2)), [(1, 1)])


def test_power_of_two_axis_uses_placeholder():
    # 4x7: axis 1 has no odd divisor, so its coordinate in every tuple is 1
    g = GridSpec((4, 7))
    assert is_simple(g)
    v = simple_grid_controllable(g, [(1, 4)])
    assert not v.controllable
    assert v.common_pairs == {(1, 7)}


def test_suggest():
    assert suggest_control_nodes(G715) == [(1, 1)]
    assert suggest_control_nodes(GridSpec((9,))) == [(1,)]


def test_suggest_3x5_is_not_a_simple_grid():
    # 3x5 repeats 2-2cos(2pi/5) and 2-2cos(4pi/5), so a single corner cannot work
    g = GridSpec((3, 5))
    assert not is_simple(g)
    with pytest.raises(NotSimpleGridError):
        suggest_control_nodes(g)
    assert len(suggest_nodes(g)) == 2


SIMPLE_SMALL = [GridSpec((a, b)) for a in range(2, 9) for b in range(a, 9) if is_simple(GridSpec((a, b)))]


@given(st.sampled_from(SIMPLE_SMALL), st.data())
def test_matches_pbh_oracle(g, data):
    nodes = data.draw(st.lists(st.tuples(st.integers(1, g.dims[0]), st.integers(1, g.dims[1])), min_size=1, max_size=3))
    v = simple_grid_controllable(g, nodes)
    L = build_grid_laplacian(g)
    pbh = pbh_uncontrollable(L, [g.flatten(i) for i in nodes], numeric_eigensystem(L))
    assert sorted(lam for lam, _ in pbh) == pytest.approx(sorted(float(x) for x in v.uncontrollable_eigenvalues), abs=1e-8)
    assert v.controllable == (not v.common_pairs)


@given(st.sampled_from(SIMPLE_SMALL), st.data())
def test_witnesses_vanish_on_nodes(g, data):
    nodes = data.draw(st.lists(st.tuples(st.integers(1, g.dims[0]), st.integers(1, g.dims[1])), min_size=1, max_size=2))
    v = simple_grid_controllable(g, nodes)
    L = build_grid_laplacian(g)
    for lam, W in zip(v.uncontrollable_eigenvalues, v.witnesses):
        assert np.max(np.abs(L @ W - float(lam) * W)) <= 1e-10
        assert max(abs(W[g.flatten(i)]) for i in nodes) <= 1e-10


@pytest.mark.parametrize("g", [g for g in SIMPLE_SMALL if g.size <= 200][:6], ids=str)
def test_unblocked_nodes_see_every_simple_eigenvector(g):
    V = np.column_stack([eb.basis[0].vector for eb in grid_spectrum(g)])
    for e in build_partition(g, g.nodes()):
        if e.controllable:
            assert np.min(np.abs(V[g.flatten(e.node)])) > 1e-10


@given(st.sampled_from(SIMPLE_SMALL))
def test_corners_control_simple_grids(g):
    for c in g.corners():
        assert simple_grid_controllable(g, [c]).controllable


def test_higher_dimensional_partition():
    g = GridSpec((3, 7, 11))
    assert is_simple(g)
    L = build_grid_laplacian(g)
    sp = numeric_eigensystem(L)
    for node in itertools.islice(g.nodes(), 0, g.size, 5):
        v = simple_grid_controllable(g, [node])
        pbh = pbh_uncontrollable(L, [g.flatten(node)], sp)
        assert len(pbh) == len(v.findings)
        assert v.controllable == (not v.common_pairs)
