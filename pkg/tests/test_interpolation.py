from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from conftest import EQ3, matrices
from mpart.combinatorics import f
from mpart.counting import image_counts
from mpart.graphs import build_gadget
from mpart.interpolation import (
    E,
    access_profile,
    build_interpolation_system,
    ell_of,
    in_excluded,
    index_pairs,
    interpolation_hardness_test,
    solve_T,
    surjective_gadget_count,
)
from mpart.matrix import PartitionMatrix, is_pure, parse_set, set_name
from mpart.oracle import Verdict
from mpart.pipeline import EXCEPTION_ROWS, exception_matrix

S = parse_set


def test_E_examples():
    assert E(1, S("bd"), EQ3) == S("cd")
    assert E(0, S("bd"), EQ3) == S("a")
    assert E(1, S("d"), EQ3) == S("abcd")
    assert E(0, 0, EQ3) == EQ3.parts


def test_ell_examples():
    assert ell_of(EQ3, S("ab"), 0) == 0
    assert ell_of(EQ3, 0, 0) == 0
    assert ell_of(exception_matrix("lemma7-M3"), S("abd"), 1) == 2


def test_excluded_examples():
    for name in ("a", "b", "d", "ab", "ad"):
        assert not in_excluded(EQ3, S(name), 0)
    assert in_excluded(EQ3, S("ac"), 0)
    assert in_excluded(EQ3, S("c"), 0)


def test_surjective_formula_examples():
    m1 = exception_matrix("lemma7-M1")
    assert surjective_gadget_count(m1, S("acd"), 1, 5) == 70
    for k in range(5, 9):
        assert surjective_gadget_count(m1, S("abc"), 1, k) == 0
        assert surjective_gadget_count(exception_matrix("hand3"), S("cd"), 0, k) == 0
    with pytest.raises(ValueError, match="k > |D|"):
        surjective_gadget_count(m1, S("acd"), 1, 4)


def test_worked_example_profiles():
    prof = access_profile(EQ3, 0, 0, 0, 2)
    assert [set_name(x) for x in prof.sets] == ["ab", "ad"]
    assert len(prof.classes) == 2
    hard = prof.hard_classes()
    assert len(hard) == 1 and hard[0].images == (S("ad"),)
    prof1 = access_profile(EQ3, 0, 0, 0, 1)
    assert sorted(set_name(x) for x in prof1.sets) == ["a", "b", "d"]
    assert sorted(set_name(x) for c in prof1.classes for x in c.images) == ["ab", "abd", "ad"]
    assert len(prof1.hard_classes()) == 2


@given(matrices(2, 4), st.data())
def test_profile_invariants(m, data):
    pi, tau = data.draw(st.integers(0, 1)), data.draw(st.integers(0, 1))
    ell, s = data.draw(st.sampled_from(index_pairs(m.size)))
    prof = access_profile(m, pi, tau, ell, s)
    assert sum(c.multiplicity for c in prof.classes) == len(prof.sets)
    for x in prof.sets:
        assert bin(x).count("1") == s and ell_of(m, x, tau) == ell and not in_excluded(m, x, tau)


def test_interpolation_test_examples():
    c = interpolation_hardness_test(EQ3)
    assert c.verdict is Verdict.SHARP_P_COMPLETE
    assert (c.detail["pi"], c.detail["tau"], c.detail["ell"], c.detail["s"]) == (0, 0, 0, 2)
    star = PartitionMatrix.from_word("*" * 10)
    with pytest.raises(ValueError):
        interpolation_hardness_test(star)
    for exc_id in EXCEPTION_ROWS:
        assert interpolation_hardness_test(exception_matrix(exc_id)) is None


def test_impure_without_hard_submatrices_not_claimed():
    m = PartitionMatrix.from_word("0000000001")
    assert not is_pure(m)
    assert interpolation_hardness_test(m) is None


def test_system_size_four():
    system = build_interpolation_system(4)
    assert len(system.columns) == 10 and len(system.F) == 10
    assert all(k >= 5 for k in system.k_values)
    assert list(system.k_values) == sorted(set(system.k_values))
    assert sympy.Matrix(system.F).rank() == 10
    assert system.rank_certificate["determinant"] == sympy.Matrix(system.F).det() != 0


def test_system_size_two_columns():
    assert build_interpolation_system(2).columns == ((0, 1), (0, 2), (1, 2))


@pytest.mark.parametrize("size", range(2, 6))
def test_system_rows_all_needed(size):
    system = build_interpolation_system(size)
    for drop in range(len(system.F)):
        rows = [r for i, r in enumerate(system.F) if i != drop]
        assert sympy.Matrix(rows).rank() == len(rows)
    assert all(row == tuple(f(l, s, k) for l, s in system.columns) for row, k in zip(system.F, system.k_values))


@given(st.lists(st.integers(0, 50), min_size=10, max_size=10))
def test_solve_T_round_trip(t):
    system = build_interpolation_system(4)
    zbar = [sum(a * b for a, b in zip(row, t)) for row in system.F]
    assert solve_T(system, zbar) == [Fraction(x) for x in t]


def test_solve_T_zero_and_inconsistent():
    system = build_interpolation_system(4)
    assert solve_T(system, [0] * 10) == [0] * 10
    with pytest.raises(ArithmeticError, match="inconsistent counts"):
        solve_T(system, [1] + [0] * 9)


@given(matrices(2, 3), st.integers(0, 1))
def test_excluded_sets_are_never_gadget_images(m, tau):
    for k in range(m.size + 1, m.size + 4):
        counts = image_counts(m, build_gadget(tau, k))
        for x in range(1, m.parts + 1):
            if in_excluded(m, x, tau):
                assert counts.get(x, 0) == 0
            else:
                assert counts.get(x, 0) == surjective_gadget_count(m, x, tau, k)
