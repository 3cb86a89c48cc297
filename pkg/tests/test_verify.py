from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import EQ3, graphs, matrices
from mpart.counting import count_on_parts
from mpart.graphs import (
    bipartition,
    complete_graph,
    cycle_graph,
    empty_graph,
    path_graph,
    star_graph,
)
from mpart.interpolation import E, submatrix_classification
from mpart.matrix import is_pure, parse_set, submatrix
from mpart.pipeline import exception_matrix
from mpart.verify import (
    HAND3_TABLE,
    HAND4_FIRST,
    HAND4_SECOND,
    LEMMA7_TABLE,
    WORKED_IMAGES,
    WORKED_TABLE,
    WORKED_VERDICTS,
    count_bipartite_cliques,
    count_independent_sets,
    direct_T,
    gadget_formula_mismatches,
    hand3_check,
    hand4_system,
    hand4_tables,
    lemma7_checks,
    table_mismatches,
    verify_eq1,
    verify_hand3,
    verify_hand4_system,
    verify_interpolation_roundtrip,
    verify_lemma6,
    verify_lemma7,
)

K1, K2, P3, P4 = complete_graph(1), complete_graph(2), path_graph(3), path_graph(4)
BIPARTITE = [K2, P3, P4, star_graph(3), cycle_graph(4)]


def test_counting_helpers():
    assert count_independent_sets(K2) == 3
    assert count_independent_sets(cycle_graph(4)) == 7
    assert count_bipartite_cliques(K2, bipartition(K2)) == 4


def test_eq1_examples():
    assert verify_eq1(EQ3, 0, 0, 5, K2)
    assert verify_eq1(EQ3, 1, 1, 0, P3)


@settings(max_examples=20)
@given(matrices(2, 4), graphs(max_n=4), st.integers(0, 1), st.integers(0, 1), st.integers(0, 6))
def test_eq1_random(m, g, pi, tau, k):
    assert verify_eq1(m, pi, tau, k, g)


def test_roundtrip_worked_example():
    assert verify_interpolation_roundtrip(EQ3, 0, 0, K2)
    t = direct_T(EQ3, 0, 0, K2)
    assert t[(0, 2)] == count_on_parts(EQ3, parse_set("ab"), K2) + count_on_parts(EQ3, parse_set("ad"), K2)
    assert verify_interpolation_roundtrip(EQ3, 1, 1, empty_graph(0))


@settings(max_examples=10)
@given(matrices(4, 4), st.integers(0, 1), st.integers(0, 1))
def test_roundtrip_random_on_path(m, pi, tau):
    if is_pure(m):
        return
    assert verify_interpolation_roundtrip(m, pi, tau, P3)


def test_worked_table():
    assert table_mismatches(EQ3, 0, WORKED_TABLE, (5, 6, 7)) == []
    for name, img in WORKED_IMAGES.items():
        assert E(0, parse_set(name), EQ3) == parse_set(img)
        verdict = submatrix_classification(submatrix(EQ3, parse_set(img)))
        assert ("hard" if verdict.hard else "easy") == WORKED_VERDICTS[name]


def test_gadget_formula_worked_example():
    assert gadget_formula_mismatches(EQ3, ks=range(5, 9)) == []


@pytest.mark.parametrize("g", [K2, P3, star_graph(3)], ids=["K2", "P3", "K13"])
def test_lemma6(g):
    assert verify_lemma6(g)


def test_lemma6_value_on_edge():
    assert count_bipartite_cliques(K2, bipartition(K2)) * 2 == 8
    with pytest.raises(ValueError):
        verify_lemma6(empty_graph(2))


@pytest.mark.parametrize("name", sorted(LEMMA7_TABLE))
def test_lemma7_tables(name):
    assert table_mismatches(exception_matrix(name), 1, LEMMA7_TABLE[name], (5, 6)) == []


@pytest.mark.parametrize("g", BIPARTITE[:4], ids=["K2", "P3", "P4", "K13"])
def test_lemma7_coefficients(g):
    assert verify_lemma7(g)


def test_lemma7_needs_v_clique_for_independent_sets():
    # with V left independent, the c/d diagonal 1s forbid two V vertices sharing those parts
    as_built = {c.name: c for c in lemma7_checks(P4, v_clique=False)}
    assert as_built["lemma7-M1"].direct == 0
    assert count_independent_sets(P4) == 8
    assert all(c.independent_sets == c.interpolated == 8 for c in lemma7_checks(P4))


def test_hand3_table():
    assert table_mismatches(exception_matrix("hand3"), 0, HAND3_TABLE, (5, 6, 7)) == []


@pytest.mark.parametrize("g", BIPARTITE, ids=["K2", "P3", "P4", "K13", "C4"])
def test_hand3_closed_form(g):
    c = hand3_check(g)
    assert c.ok
    assert verify_hand3(g, ks=(5,))


def test_hand4_tables_match_printed():
    first, second = hand4_tables(exception_matrix("hand4"))
    assert first == HAND4_FIRST
    assert second == HAND4_SECOND


@pytest.mark.parametrize("g", [K1, K2, P3], ids=["K1", "K2", "P3"])
def test_hand4_system(g):
    assert verify_hand4_system(g)


def test_hand4_solved_value_on_edge():
    r = hand4_system(K2)
    assert r.solved[1] == Fraction(3) == r.z_ad
