import os

import pytest
from hypothesis import given, strategies as st

from conftest import EQ3, graphs, matrices, naive_counts
from mpart.counting import (
    BudgetError,
    brute_Z,
    brute_Z_surjective,
    count_on_parts,
    exact_image_counts,
    exact_Z,
    image_counts,
)
from mpart.graphs import build_gadget, build_J, build_lemma7_Gk, bipartition, complete_graph, empty_graph, path_graph
from mpart.matrix import PartitionMatrix, complement, parse_set, permute, submatrix

K2 = complete_graph(2)


def test_examples():
    assert brute_Z(PartitionMatrix.parse("**/*0"), K2) == 3
    assert brute_Z(EQ3, K2) == 12
    assert brute_Z(PartitionMatrix.from_word("*" * 10), path_graph(3)) == 4**3
    assert brute_Z_surjective(EQ3, build_gadget(0, 5), parse_set("ab")) == 30
    assert brute_Z_surjective(EQ3, K2, 0) == 0
    assert brute_Z_surjective(EQ3, K2, EQ3.parts) == 0


def test_empty_graph_convention():
    g0 = empty_graph(0)
    assert brute_Z(EQ3, g0) == 1
    assert image_counts(EQ3, g0) == {0: 1}
    assert count_on_parts(EQ3, 0, K2) == 0
    assert count_on_parts(EQ3, 0, g0) == 1


def test_budget_guard(monkeypatch):
    monkeypatch.setenv("MPART_BUDGET_BITS", "6")
    with pytest.raises(BudgetError, match="too large for oracle"):
        brute_Z(EQ3, path_graph(4))
    monkeypatch.setenv("MPART_BUDGET_BITS", "nope")
    with pytest.raises(BudgetError):
        brute_Z(EQ3, K2)


@given(matrices(1, 4), graphs())
def test_matches_naive_enumeration(m, g):
    assert image_counts(m, g) == naive_counts(m, g)


@given(matrices(1, 4), graphs())
def test_partition_of_counts(m, g):
    counts = image_counts(m, g)
    assert sum(brute_Z_surjective(m, g, s) for s in range(m.parts + 1)) == brute_Z(m, g) == sum(counts.values())


@given(matrices(1, 4), graphs())
def test_complement_duality(m, g):
    assert brute_Z(m, g) == brute_Z(complement(m), g.complement())


@given(matrices(1, 4), graphs(), st.data())
def test_permutation_invariance(m, g, data):
    rho = data.draw(st.permutations(list(range(m.size))))
    assert brute_Z(permute(m, rho), g) == brute_Z(m, g)


@given(matrices(2, 4), graphs())
def test_count_on_parts_is_submatrix_count(m, g):
    for parts in range(1, m.parts + 1):
        assert count_on_parts(m, parts, g) == brute_Z(submatrix(m, parts), g)


@given(matrices(1, 4), graphs(max_n=5))
def test_exact_counter_matches_brute(m, g):
    assert exact_image_counts(m, g) == image_counts(m, g)


@given(matrices(4, 4), graphs(max_n=3), st.integers(0, 1), st.integers(0, 1), st.integers(0, 7))
def test_exact_counter_matches_brute_on_gadgets(m, g, pi, tau, k):
    j = build_J(pi, tau, k, g)
    assert exact_Z(m, j) == brute_Z(m, j)


def test_exact_counter_beyond_budget():
    # a 14-clique joined to P4: 4^18 assignments, out of brute-force reach
    g = path_graph(4)
    big = build_lemma7_Gk(g, bipartition(g), 14)
    assert big.n == 18
    m = PartitionMatrix.from_word("*" * 10)
    assert exact_Z(m, big) == 4**18
