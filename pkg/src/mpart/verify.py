"""Brute-force checks of the counting identities behind the classifier."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from .combinatorics import f
from .counting import count_on_parts, count_with_lists, exact_Z, image_counts
from .graphs import (
    Bipartition,
    SimpleGraph,
    bipartition,
    build_gadget,
    build_hand3_layout,
    build_J,
    build_lemma7_Gk,
    is_connected,
)
from .interpolation import (
    E,
    InterpolationSystem,
    build_interpolation_system,
    index_pairs,
    profile_sets,
    solve_T,
    submatrix_classification,
    surjective_gadget_count,
)
from .linalg import solve
from .matrix import PartitionMatrix, bits, full_set, parse_set, perm_key, set_name, submatrix
from .oracle import Verdict
from .pipeline import exception_matrix

# Printed gadget tables: part-set -> (ell, s) of the f-function, or 0.
WORKED_EXAMPLE = PartitionMatrix.parse("001*01111*")
WORKED_TABLE = {"a": (0, 1), "b": (0, 1), "d": (0, 1), "ab": (0, 2), "ad": (0, 2)}
WORKED_IMAGES = {"a": "abd", "b": "ab", "d": "ad", "ab": "ab", "ad": "ad"}
WORKED_VERDICTS = {"a": "hard", "b": "easy", "d": "hard", "ab": "easy", "ad": "hard"}
LEMMA7_TABLE = {
    "lemma7-M1": {"abc": 0, "abd": 0, "acd": (1, 3), "bcd": 0},
    "lemma7-M2": {"abc": 0, "abd": 0, "acd": (1, 3), "bcd": 0},
    "lemma7-M3": {"abc": 0, "abd": (2, 3), "acd": (1, 3), "bcd": 0},
}
HAND3_TABLE = {"ab": (0, 2), "ac": (1, 2), "ad": (1, 2), "bc": 0, "bd": (1, 2), "cd": 0}
HAND4_FIRST = {"ab": "bd", "ac": "cd", "ad": "bcd", "bc": "ad", "bd": "abd"}
HAND4_SECOND = {
    ("a", "bc"): "ad", ("a", "bd"): "abd",
    ("b", "ab"): "bd", ("b", "ad"): "bcd", ("b", "bd"): "abd",
    ("c", "ac"): "c", ("c", "ad"): "bc",
    ("d", "ab"): "bd", ("d", "ac"): "d", ("d", "ad"): "bd", ("d", "bc"): "ad", ("d", "bd"): "abd",
}


def _expected(entry, k: int) -> int:
    return 0 if entry == 0 else f(entry[0], entry[1], k)


# gadget formula ---------------------------------------------------------------

def gadget_formula_mismatches(
    m: PartitionMatrix, taus: Iterable[int] = (0, 1), ks: Iterable[int] | None = None
) -> list[tuple[int, int, int, int, int]]:
    """``(tau, k, S, brute, formula)`` for every disagreement between the
    brute-forced surjective gadget counts and the closed formula."""
    ks = list(ks) if ks is not None else list(range(m.size + 1, m.size + 5))
    bad = []
    for tau in taus:
        for k in ks:
            counts = image_counts(m, build_gadget(tau, k))
            for s in range(full_set(m.size) + 1):
                want = surjective_gadget_count(m, s, tau, k)
                got = counts.get(s, 0)
                if got != want:
                    bad.append((tau, k, s, got, want))
    return bad


def table_mismatches(
    m: PartitionMatrix, tau: int, table: dict, ks: Iterable[int]
) -> list[tuple[str, int, int, int]]:
    """Compare brute-forced ``Z^S`` on the gadget with a printed table."""
    bad = []
    for k in ks:
        counts = image_counts(m, build_gadget(tau, k))
        for name, entry in table.items():
            got = counts.get(parse_set(name), 0)
            want = _expected(entry, k)
            if got != want:
                bad.append((name, k, got, want))
    return bad


# decomposition and interpolation ----------------------------------------------

def verify_eq1(m: PartitionMatrix, pi: int, tau: int, k: int, g: SimpleGraph) -> bool:
    """Count of the attached graph equals the sum over gadget images ``S`` of
    (gadget count with image ``S``) x (count of ``g`` on the parts allowed by ``S``)."""
    lhs = sum(image_counts(m, build_J(pi, tau, k, g)).values())
    gadget = image_counts(m, build_gadget(tau, k))
    rhs = sum(c * count_on_parts(m, E(pi, s, m), g) for s, c in gadget.items())
    return lhs == rhs


def direct_T(m: PartitionMatrix, pi: int, tau: int, g: SimpleGraph) -> dict[tuple[int, int], int]:
    """Each grouped term computed straight from its definition."""
    return {
        (ell, s): sum(count_on_parts(m, E(pi, x, m), g) for x in profile_sets(m, tau, ell, s))
        for ell, s in index_pairs(m.size)
    }


def interpolated_T(
    m: PartitionMatrix, pi: int, tau: int, g: SimpleGraph, system: InterpolationSystem | None = None
) -> dict[tuple[int, int], Fraction]:
    """Grouped terms recovered from whole-graph counts at the system's gadget sizes."""
    system = system or build_interpolation_system(m.size)
    zbar = [exact_Z(m, build_J(pi, tau, k, g)) for k in system.k_values]
    return dict(zip(system.columns, solve_T(system, zbar)))


def verify_interpolation_roundtrip(
    m: PartitionMatrix, pi: int, tau: int, g: SimpleGraph, system: InterpolationSystem | None = None
) -> bool:
    return interpolated_T(m, pi, tau, g, system) == direct_T(m, pi, tau, g)


# counting helpers ------------------------------------------------------------

def count_independent_sets(g: SimpleGraph) -> int:
    total = 0
    for mask in range(1 << g.n):
        if not any((mask >> u) & 1 and (mask >> v) & 1 for u, v in g.edges):
            total += 1
    return total


def count_cliques(g: SimpleGraph) -> int:
    return count_independent_sets(g.complement())


def count_bipartite_cliques(g: SimpleGraph, bip: Bipartition) -> int:
    total = 0
    for mask in range(1 << g.n):
        us = [u for u in bip.U if (mask >> u) & 1]
        vs = [v for v in bip.V if (mask >> v) & 1]
        if all(g.has_edge(u, v) for u in us for v in vs):
            total += 1
    return total


# the six hand-resolved matrices ------------------------------------------

def verify_lemma6(g: SimpleGraph) -> bool:
    """On a connected bipartite graph the count is twice the number of
    bipartite cliques."""
    if not is_connected(g):
        raise ValueError("verify_lemma6 needs a connected graph")
    bip = bipartition(g)
    m = exception_matrix("lemma6")
    return sum(image_counts(m, g).values()) == 2 * count_bipartite_cliques(g, bip)


@dataclass
class CoefficientCheck:
    name: str
    interpolated: Fraction
    direct: int
    independent_sets: int | None
    extra: int = 0

    @property
    def ok(self) -> bool:
        if self.independent_sets is None:
            return self.interpolated == self.direct
        return self.interpolated == self.direct == self.independent_sets + self.extra


def _with_v_clique(g: SimpleGraph, bip: Bipartition) -> SimpleGraph:
    return SimpleGraph.from_edges(g.n, set(g.edges) | set(combinations(sorted(bip.V), 2)))


def lemma7_checks(
    g: SimpleGraph, bip: Bipartition | None = None, v_clique: bool = True
) -> list[CoefficientCheck]:
    """For each of the three matrices, the ``f(1,3)`` coefficient of the count
    of ``G_k`` (clique ``W`` joined to ``V``) against the list count it
    stands for.

    The list count matches the independent sets of ``g`` only when the
    ``V`` side is also made a clique: the ``c``/``d`` diagonal entries are 1,
    so two non-adjacent ``V`` vertices cannot both go there.  With
    ``v_clique`` false the independent-set comparison is skipped.
    """
    bip = bip or bipartition(g)
    bip.check(g)
    system = build_interpolation_system(4)
    acd = parse_set("acd")
    base = _with_v_clique(g, bip) if v_clique else g
    out = []
    for name in LEMMA7_TABLE:
        m = exception_matrix(name)
        zbar = []
        for k in system.k_values:
            gk = build_lemma7_Gk(g, bip, k)
            if v_clique:
                gk = SimpleGraph(gk.n, gk.edges | base.edges)
            zbar.append(exact_Z(m, gk))
        coeff = dict(zip(system.columns, solve_T(system, zbar)))[(1, 3)]
        lists = [E(0, acd, m) if v in bip.U else E(1, acd, m) for v in range(g.n)]
        direct = count_with_lists(m, base, lists)
        iset = count_independent_sets(g) if v_clique else None
        out.append(CoefficientCheck(name, coeff, direct, iset))
    return out


def verify_lemma7(g: SimpleGraph, bip: Bipartition | None = None, ks: Iterable[int] = (5, 6)) -> bool:
    ks = list(ks)
    tables_ok = all(
        not table_mismatches(exception_matrix(name), 1, table, ks)
        for name, table in LEMMA7_TABLE.items()
    )
    return tables_ok and all(c.ok for c in lemma7_checks(g, bip)) and all(
        c.ok for c in lemma7_checks(g, bip, v_clique=False)
    )


def hand3_check(g: SimpleGraph, bip: Bipartition | None = None) -> CoefficientCheck:
    """The ``f(0,2)`` coefficient of the count of ``G_k`` equals the number of
    independent sets of ``g`` plus ``2^|V| + sum_u 2^(|V| - deg u)``."""
    bip = bip or bipartition(g)
    bip.check(g)
    m = exception_matrix("hand3")
    system = build_interpolation_system(4)
    zbar = [exact_Z(m, build_hand3_layout(g, bip, k).graph) for k in system.k_values]
    coeff = dict(zip(system.columns, solve_T(system, zbar)))[(0, 2)]
    base = build_hand3_layout(g, bip, 0)
    ab = parse_set("ab")
    lists = [E(0, ab, m) if v in bip.U else E(1, ab, m) for v in range(base.graph.n)]
    direct = count_with_lists(m, base.graph, lists)
    nv = len(bip.V)
    extra = 2**nv + sum(2 ** (nv - g.degree(u)) for u in bip.U)
    return CoefficientCheck("hand3", coeff, direct, count_independent_sets(g), extra)


def verify_hand3(g: SimpleGraph, bip: Bipartition | None = None, ks: Iterable[int] = (5, 6, 7)) -> bool:
    tables_ok = not table_mismatches(exception_matrix("hand3"), 0, HAND3_TABLE, ks)
    return tables_ok and hand3_check(g, bip).ok


@dataclass
class Hand4Result:
    T: int
    T_plus: int
    T_interpolated: Fraction | None
    T_plus_interpolated: Fraction | None
    T_plus_by_table: int
    p: int
    p_prime: int
    hard_first: dict[str, int]
    hard_second: dict[str, int]
    z_abd: int
    z_ad: int
    solved: tuple[Fraction, Fraction]

    @property
    def ok(self) -> bool:
        key_abd = perm_key(submatrix(exception_matrix("hand4"), parse_set("abd")))
        key_ad = perm_key(submatrix(exception_matrix("hand4"), parse_set("ad")))
        interp_ok = (self.T_interpolated in (None, self.T)) and (
            self.T_plus_interpolated in (None, self.T_plus)
        )
        return (
            interp_ok
            and self.T_plus == self.T_plus_by_table
            and self.hard_first == {key_abd: 1, key_ad: 1}
            and self.hard_second == {key_abd: 3, key_ad: 2}
            and self.T == self.p + self.z_abd + self.z_ad
            and self.T_plus == self.p_prime + 3 * self.z_abd + 2 * self.z_ad
            and self.solved == (self.z_abd, self.z_ad)
        )


def hand4_tables(m: PartitionMatrix) -> tuple[dict[str, str], dict[tuple[str, str], str]]:
    """Images ``E^1(S)`` for the two-part gadget sets, and the restricted
    part-sets ``E^0({i}) & E^1(S)`` for each part ``i`` of the extra vertex."""
    sets = profile_sets(m, 0, 0, 2)
    first = {set_name(s): set_name(E(1, s, m)) for s in sets}
    second = {}
    for s in sets:
        img = E(1, s, m)
        for i in bits(img):
            second[(set_name(1 << i), set_name(s))] = set_name(E(0, 1 << i, m) & img)
    return first, second


def hand4_system(g: SimpleGraph, interpolate: bool = True) -> Hand4Result:
    m = exception_matrix("hand4")
    sets = profile_sets(m, 0, 0, 2)
    gx = g.add_isolated()

    def split(parts_list):
        easy, hard = 0, {}
        for parts in parts_list:
            z = count_on_parts(m, parts, g)
            if parts and submatrix_classification(submatrix(m, parts)).verdict is Verdict.SHARP_P_COMPLETE:
                key = perm_key(submatrix(m, parts))
                hard[key] = hard.get(key, 0) + 1
            else:
                easy += z
        return easy, hard

    T = sum(count_on_parts(m, E(1, s, m), g) for s in sets)
    T_plus = sum(count_on_parts(m, E(1, s, m), gx) for s in sets)
    restricted = [E(0, 1 << i, m) & E(1, s, m) for s in sets for i in bits(E(1, s, m))]
    T_plus_by_table = sum(count_on_parts(m, parts, g) for parts in restricted)
    p, hard_first = split([E(1, s, m) for s in sets])
    p_prime, hard_second = split(restricted)
    z_abd = count_on_parts(m, parse_set("abd"), g)
    z_ad = count_on_parts(m, parse_set("ad"), g)
    solved = tuple(solve([[1, 1], [3, 2]], [T - p, T_plus - p_prime]))
    t_i = t_pi = None
    if interpolate:
        system = build_interpolation_system(4)
        t_i = interpolated_T(m, 1, 0, g, system)[(0, 2)]
        t_pi = interpolated_T(m, 1, 0, gx, system)[(0, 2)]
    return Hand4Result(
        T, T_plus, t_i, t_pi, T_plus_by_table, p, p_prime, hard_first, hard_second, z_abd, z_ad, solved
    )


def verify_hand4_system(g: SimpleGraph, interpolate: bool = True) -> bool:
    return hand4_system(g, interpolate).ok
