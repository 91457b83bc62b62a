import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from gridctl.config import MP
from gridctl.errors import NodeRangeError, UsageError
from gridctl.grid import build_path_laplacian
from gridctl.oracle import numeric_eigensystem, pbh_uncontrollable
from gridctl.paths import (
    block_pattern,
    canonical_uncontrollable_set,
    congruence_chain,
    path_node_uncontrollable,
    path_nodeset_uncontrollable,
    path_uncontrollable_eigenpairs,
)


# Expected lists below were produced by the PBH oracle on L_n and frozen.
@pytest.mark.parametrize(
    "n,i,expected",
    [(6, 2, [3]), (7, 1, []), (9, 5, [3, 9]), (15, 8, [3, 5]), (1, 1, [])],
)
def test_single_node(n, i, expected):
    assert path_node_uncontrollable(n, i) == expected
    assert bool(pbh_uncontrollable(build_path_laplacian(n), [i - 1])) == bool(expected)


@pytest.mark.parametrize(
    "n,nodes,expected",
    [(6, [2, 5], [3]), (6, [1, 2], []), (15, [8], [3, 5]), (9, [4, 5, 6], [])],
)
def test_node_sets(n, nodes, expected):
    assert path_nodeset_uncontrollable(n, nodes) == expected
    assert bool(pbh_uncontrollable(build_path_laplacian(n), [i - 1 for i in nodes])) == bool(expected)


def test_chain_terms():
    assert congruence_chain(6, [2, 5]) == [3, 3, 3]
    assert congruence_chain(9, [4, 5, 6]) == [7, 1, 1, 7]


@pytest.mark.parametrize(
    "n,q,expected",
    [(6, 3, (2, 5)), (15, 5, (3, 8, 13)), (15, 3, (2, 5, 8, 11, 14))],
)
def test_canonical_sets(n, q, expected):
    assert canonical_uncontrollable_set(n, q) == expected


def test_canonical_set_errors():
    with pytest.raises(UsageError):
        canonical_uncontrollable_set(10, 3)
    with pytest.raises(UsageError):
        canonical_uncontrollable_set(8, 2)


def test_range_errors():
    with pytest.raises(NodeRangeError):
        path_node_uncontrollable(5, 6)
    with pytest.raises(UsageError):
        path_nodeset_uncontrollable(5, [])


def test_eigenpairs_p3_node2():
    v = path_uncontrollable_eigenpairs(3, 2)
    assert v.modulus == 3
    assert [float(x) for x in v.uncontrollable_eigenvalues] == pytest.approx([1.0])
    assert v.witnesses[0] == pytest.approx([1.0, 0.0, -1.0])


def test_eigenpairs_p15_node8():
    v = path_uncontrollable_eigenpairs(15, 8)
    assert v.modulus == 15
    got = [x.numeric for x in v.uncontrollable_eigenvalues]
    want = [2 - 2 * MP.cos((2 * nu - 1) * MP.pi / 15) for nu in range(1, 8)]
    assert all(abs(a - b) < 1e-25 for a, b in zip(got, want)) and len(got) == 7


def test_eigenpairs_p6_nodes_2_5():
    v = path_uncontrollable_eigenpairs(6, [2, 5])
    assert [float(x) for x in v.uncontrollable_eigenvalues] == pytest.approx([1.0])
    W = v.witnesses[0]
    assert W[1] == 0 and W[4] == 0


@given(st.integers(1, 45), st.data())
def test_witnesses_vanish_and_follow_block_pattern(n, data):
    nodes = data.draw(st.sets(st.integers(1, n), min_size=1, max_size=3))
    v = path_uncontrollable_eigenpairs(n, nodes)
    L = build_path_laplacian(n)
    for lam, W in zip(v.uncontrollable_eigenvalues, v.witnesses):
        assert np.max(np.abs(L @ W - float(lam) * W)) <= 1e-10
        assert all(abs(W[i - 1]) <= 1e-10 for i in nodes)
        assert block_pattern(W, v.modulus)


@given(st.integers(1, 45), st.data())
def test_modulus_is_gcd(n, data):
    nodes = data.draw(st.sets(st.integers(1, n), min_size=1, max_size=4))
    v = path_uncontrollable_eigenpairs(n, nodes)
    assert v.modulus == math.gcd(n, *(2 * i - 1 for i in nodes))


@given(st.integers(1, 40), st.data())
def test_verdict_matches_oracle_eigenvalue_count(n, data):
    nodes = sorted(data.draw(st.sets(st.integers(1, n), min_size=1, max_size=3)))
    v = path_uncontrollable_eigenpairs(n, nodes)
    pbh = pbh_uncontrollable(build_path_laplacian(n), [i - 1 for i in nodes], numeric_eigensystem(build_path_laplacian(n)))
    assert sorted(lam for lam, _ in pbh) == pytest.approx(sorted(float(x) for x in v.uncontrollable_eigenvalues))


def test_external_nodes_always_controllable():
    for n in range(1, 60):
        assert path_node_uncontrollable(n, 1) == [] and path_node_uncontrollable(n, n) == []
