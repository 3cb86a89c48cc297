from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from conftest import EQ3, matrices
from mpart.matrix import (
    ONE,
    STAR,
    ZERO,
    PartitionMatrix,
    Symbol,
    canonical_form,
    canonical_key,
    complement,
    is_pure,
    orbit_size,
    parse_set,
    permute,
    perm_key,
    restrict,
    set_name,
    submatrix,
    w_word,
    word_positions,
)

ALL_STAR = PartitionMatrix.from_word("*" * 10)
ALL_ZERO = PartitionMatrix.from_word("0" * 10)


def brute_key(m: PartitionMatrix) -> str:
    """Least read-off in the fixed order over every relabelling and complement."""
    order = [(0, 0), (1, 1), (2, 2), (3, 3), (0, 1), (1, 2), (2, 3), (0, 2), (1, 3), (0, 3)]
    rank = {"0": "0", "1": "1", "*": "2"}
    best = None
    for flip in (False, True):
        for rho in permutations(range(4)):
            inv = [rho.index(i) for i in range(4)]
            word = ""
            for i, j in order:
                ch = m.entries[inv[i]][inv[j]].char
                if flip:
                    ch = {"0": "1", "1": "0", "*": "*"}[ch]
                word += rank[ch]
            best = word if best is None or word < best else best
    return best.replace("2", "*")


def test_symbol_order():
    assert ZERO < ONE < STAR
    assert len(Symbol) == 3
    assert Symbol.from_char("*") is STAR
    with pytest.raises(ValueError):
        Symbol.from_char("x")


def test_parse_formats_agree():
    rows = PartitionMatrix.parse("001*/0011/1111/*11*")
    assert rows == EQ3
    assert EQ3.rows_str() == "001*/0011/1111/*11*"
    assert PartitionMatrix.parse(EQ3.word_str()) == EQ3


def test_parse_rejects_asymmetry_naming_pair():
    with pytest.raises(ValueError, match=r"\(a,b\)"):
        PartitionMatrix.parse("01/*0")


@pytest.mark.parametrize("text", ["", "001*0111", "001/00", "0x/x0", "0" * 11])
def test_parse_rejects_malformed(text):
    with pytest.raises(ValueError):
        PartitionMatrix.parse(text)


def test_size_cap():
    PartitionMatrix.from_word("0" * 36)
    with pytest.raises(ValueError):
        PartitionMatrix.from_word("0" * 45)


def test_w_word_examples():
    assert w_word(EQ3) == "001*01111*"
    assert w_word(ALL_ZERO) == "0000000000"
    assert w_word(ALL_STAR) == "**********"
    assert word_positions(4) == (
        (0, 0), (1, 1), (2, 2), (3, 3), (0, 1), (1, 2), (2, 3), (0, 2), (1, 3), (0, 3)
    )


def test_restrict_examples():
    ad, ab, bc = parse_set("ad"), parse_set("ab"), parse_set("bc")
    assert restrict(EQ3, ad, ad) == ((ZERO, STAR), (STAR, STAR))
    assert restrict(EQ3, ab, bc) == ((ZERO, ONE), (ZERO, ONE))
    assert restrict(EQ3, EQ3.parts, EQ3.parts) == EQ3.entries
    with pytest.raises(ValueError, match="empty restriction"):
        restrict(EQ3, 0, ad)


def test_complement_example():
    assert complement(EQ3) == PartitionMatrix.parse("110*/1100/0000/*00*")
    assert complement(ALL_STAR) == ALL_STAR


def test_permute_definition():
    rho = [1, 0, 2, 3]
    p = permute(EQ3, rho)
    for i in range(4):
        for j in range(4):
            assert p[rho[i], rho[j]] == EQ3[i, j]
    assert permute(EQ3, range(4)) == EQ3
    with pytest.raises(ValueError):
        permute(EQ3, [0, 0, 1, 2])


def test_is_pure_examples():
    assert not is_pure(EQ3)
    assert is_pure(ALL_STAR)
    assert is_pure(PartitionMatrix.parse("0*/**"))


def test_canonical_key_of_worked_example():
    # the brute-force minimum over all 48 variants
    assert brute_key(EQ3) == "001*01111*"
    assert canonical_key(EQ3) == "001*01111*"


def test_set_names():
    assert set_name(parse_set("abd")) == "abd"
    assert parse_set("0,1,3") == parse_set("abd")
    assert set_name(0) == "{}"
    with pytest.raises(ValueError):
        parse_set("ae", 4)


@given(matrices(4, 4))
def test_canonical_key_matches_brute_force(m):
    assert canonical_key(m) == brute_key(m)


@given(matrices(), st.data())
def test_canonical_key_orbit_invariant(m, data):
    rho = data.draw(st.permutations(list(range(m.size))))
    key = canonical_key(m)
    assert canonical_key(permute(m, rho)) == key
    assert canonical_key(complement(m)) == key
    assert canonical_key(canonical_form(m)) == key
    assert w_word(canonical_form(m)) == key


@given(matrices(), st.data())
def test_perm_key_ignores_relabelling_only(m, data):
    rho = data.draw(st.permutations(list(range(m.size))))
    assert perm_key(permute(m, rho)) == perm_key(m)


@given(matrices())
def test_complement_involution_and_symmetry(m):
    assert complement(complement(m)) == m
    for i in range(m.size):
        for j in range(m.size):
            assert m[i, j] == m[j, i]


@given(matrices(), st.data())
def test_permute_group_action(m, data):
    n = m.size
    rho = data.draw(st.permutations(list(range(n))))
    sigma = data.draw(st.permutations(list(range(n))))
    rho_sigma = [rho[sigma[i]] for i in range(n)]
    assert permute(m, rho_sigma) == permute(permute(m, sigma), rho)
    inv = [rho.index(i) for i in range(n)]
    assert permute(permute(m, rho), inv) == m


@given(matrices(2, 4), st.data())
def test_restrict_composes(m, data):
    s = data.draw(st.integers(1, m.parts))
    sub = submatrix(m, s)
    t = data.draw(st.integers(1, sub.parts))
    # t indexes positions inside s
    members = [i for i in range(m.size) if (s >> i) & 1]
    t_in_m = sum(1 << members[i] for i in range(sub.size) if (t >> i) & 1)
    assert submatrix(sub, t) == submatrix(m, t_in_m)


@given(matrices(1, 4))
def test_orbit_size_divides_group_order(m):
    from math import factorial

    assert (2 * factorial(m.size)) % orbit_size(m) == 0
