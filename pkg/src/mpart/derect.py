"""Derectangularising sequences.

``has_derect_sequence`` is the exact decider: it searches every maximal
purifying family of part-sets (each of size at least 2) and, inside each
family, runs a breadth-first closure over ``(last set, composed relation)``
states.  ``doubletons_tractable`` is the cheaper sufficient test that only
looks at families of 2-element part-sets.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import networkx as nx

from .matrix import PartitionMatrix, bits, full_set, is_pure, is_pure_on, popcount, set_name, submatrix
from .oracle import has_hard_principal_pair
from .relations import BinaryRelation, compose, compose_rows, is_purifying, rows_rectangular, star_relation

MAX_DOUBLETON_SIZE = 6


@dataclass(frozen=True)
class DerectWitness:
    sequence: tuple[int, ...]
    relation: BinaryRelation

    def sequence_names(self) -> list[str]:
        return [set_name(x) for x in self.sequence]

    def __str__(self) -> str:
        return "(" + ", ".join(self.sequence_names()) + f") -> {self.relation}"


def compose_sequence(m: PartitionMatrix, sequence: tuple[int, ...]) -> BinaryRelation:
    if len(sequence) < 2:
        raise ValueError("a sequence needs at least two sets to compose")
    rel = star_relation(m, sequence[0], sequence[1])
    for x, y in zip(sequence[1:], sequence[2:]):
        rel = compose(rel, star_relation(m, x, y))
    return rel


def check_witness(m: PartitionMatrix, sequence: tuple[int, ...]) -> bool:
    """Re-verify a candidate sequence from scratch."""
    if len(sequence) < 2 or any(popcount(x) < 2 for x in sequence):
        return False
    if not is_purifying(m, sorted(set(sequence))):
        return False
    return not rows_rectangular(compose_sequence(m, sequence).rows)


def purifying_families(m: PartitionMatrix) -> list[tuple[int, ...]]:
    """Maximal purifying families of part-sets of size >= 2, in a fixed order."""
    cands = [x for x in range(1, full_set(m.size) + 1) if popcount(x) >= 2 and is_pure_on(m, x, x)]
    cands.sort(key=lambda x: (popcount(x), x))
    g = nx.Graph()
    g.add_nodes_from(cands)
    for x, y in combinations(cands, 2):
        if is_pure_on(m, x, y):
            g.add_edge(x, y)
    fams = [tuple(sorted(c, key=lambda x: (popcount(x), x))) for c in nx.find_cliques(g)]
    fams.sort(key=lambda f: (-len(f), [(popcount(x), x) for x in f]))
    return fams


def _search_family(m: PartitionMatrix, fam: tuple[int, ...]) -> DerectWitness | None:
    h = {(x, y): star_relation(m, x, y).rows for x in fam for y in fam}
    parent: dict[tuple[int, tuple[int, ...]], tuple | None] = {}
    queue = deque()

    def witness(state):
        seq = []
        st = state
        while True:
            link = parent[st]
            seq.append(st[0])
            if link[0] is None:
                seq.append(link[1])
                break
            st = link[0]
        seq.reverse()
        seq = tuple(seq)
        return DerectWitness(seq, compose_sequence(m, seq))

    for x in fam:
        for y in fam:
            rows = h[(x, y)]
            state = (y, rows)
            if state in parent or not any(rows):
                continue
            parent[state] = (None, x)
            if not rows_rectangular(rows):
                return witness(state)
            queue.append(state)

    while queue:
        state = queue.popleft()
        cur, rows = state
        for z in fam:
            nrows = compose_rows(rows, h[(cur, z)])
            nstate = (z, nrows)
            if nstate in parent or not any(nrows):
                continue
            parent[nstate] = (state, z)
            if not rows_rectangular(nrows):
                return witness(nstate)
            queue.append(nstate)
    return None


@lru_cache(maxsize=100_000)
def has_derect_sequence(m: PartitionMatrix) -> DerectWitness | None:
    """A derectangularising sequence of ``m``, or ``None`` if there is none."""
    if m.size > 8:
        raise ValueError("domain too large for exact decider")
    for fam in purifying_families(m):
        w = _search_family(m, fam)
        if w is not None:
            return w
    return None


def _pure_without_sequence(m: PartitionMatrix, parts: int) -> bool:
    if not parts:
        return True
    if not is_pure_on(m, parts, parts):
        return False
    return has_derect_sequence(submatrix(m, parts)) is None


def doubletons_failure(m: PartitionMatrix) -> tuple[int, ...] | None:
    """The first family ``W`` of 2-element part-sets for which none of the
    three tractability properties holds, or ``None``."""
    if m.size > MAX_DOUBLETON_SIZE:
        raise ValueError(f"doubleton test limited to size <= {MAX_DOUBLETON_SIZE}")
    doubles = [x for x in range(1, full_set(m.size) + 1) if popcount(x) == 2]
    nd = len(doubles)
    pure_pair = {}
    for a in range(nd):
        for b in range(a, nd):
            p = is_pure_on(m, doubles[a], doubles[b])
            pure_pair[(a, b)] = pure_pair[(b, a)] = p
    for wmask in range(1 << nd):
        idx = bits(wmask)
        # property 1: some block between members is impure
        if any(not pure_pair[(a, b)] for a in idx for b in idx):
            continue
        # property 2: two disjoint sets with a pure *-rectangular block
        if len(idx) == 2:
            s, t = doubles[idx[0]], doubles[idx[1]]
            if not s & t and rows_rectangular(star_relation(m, s, t).rows):
                continue
        # property 3: the union is pure with no derectangularising sequence
        union = 0
        for a in idx:
            union |= doubles[a]
        if _pure_without_sequence(m, union):
            continue
        return tuple(doubles[a] for a in idx)
    return None


def doubletons_tractable(m: PartitionMatrix) -> bool:
    return doubletons_failure(m) is None


def impure3x3_no_derect(m: PartitionMatrix) -> bool:
    """For an impure 3x3 matrix: no principal 2x2 block is the IS or clique
    matrix (which is exactly when no derectangularising sequence exists)."""
    if m.size != 3:
        raise ValueError("impure3x3_no_derect needs a 3x3 matrix")
    if is_pure(m):
        raise ValueError("impure3x3_no_derect needs an impure matrix")
    return not has_hard_principal_pair(m)
