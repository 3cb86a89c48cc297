"""Exact M-partition counts.

``image_counts`` is the brute-force oracle: it walks every assignment of
parts to vertices (vectorised in chunks) and tallies the valid ones by
their image.  ``exact_image_counts`` gives the same tallies but collapses
classes of twin vertices first, so it can handle graphs with a large
clique or independent-set gadget attached.
"""

from __future__ import annotations

import os
from functools import reduce
from itertools import combinations
from math import comb, prod
from typing import Sequence

import numpy as np

from .graphs import SimpleGraph
from .matrix import ONE, STAR, ZERO, PartitionMatrix, bits, popcount

DEFAULT_BUDGET_BITS = 30
CHUNK = 1 << 18


class BudgetError(RuntimeError):
    pass


def budget_bits() -> int:
    raw = os.environ.get("MPART_BUDGET_BITS")
    if raw is None:
        return DEFAULT_BUDGET_BITS
    try:
        return int(raw)
    except ValueError:
        raise BudgetError(f"MPART_BUDGET_BITS must be an integer, got {raw!r}") from None


def _tables(m: PartitionMatrix) -> tuple[np.ndarray, np.ndarray]:
    ent = np.array([[int(s) for s in row] for row in m.entries])
    on_edge = (ent == int(ONE)) | (ent == int(STAR))
    off_edge = (ent == int(ZERO)) | (ent == int(STAR))
    return on_edge, off_edge


def _lists(m: PartitionMatrix, g: SimpleGraph, lists: Sequence[int] | int | None) -> list[int]:
    if lists is None:
        return [m.parts] * g.n
    if isinstance(lists, int):
        return [lists] * g.n
    if len(lists) != g.n:
        raise ValueError("need one list per vertex")
    return list(lists)


def image_counts(
    m: PartitionMatrix, g: SimpleGraph, lists: Sequence[int] | int | None = None
) -> dict[int, int]:
    """Brute force: valid assignments (vertex ``v`` into a part of
    ``lists[v]``) tallied by image part-set."""
    lists = _lists(m, g, lists)
    n = g.n
    if n == 0:
        return {0: 1}
    choices = [np.array(bits(lst), dtype=np.int64) for lst in lists]
    radix = [len(c) for c in choices]
    total = prod(radix)
    if total == 0:
        return {}
    if total > 1 << budget_bits():
        raise BudgetError(
            f"instance too large for oracle: {total} assignments exceed 2^{budget_bits()}"
        )
    on_edge, off_edge = _tables(m)
    pair_tables = [
        (u, v, on_edge if (u, v) in g.edges else off_edge) for u, v in combinations(range(n), 2)
    ]
    strides = [1] * n
    for v in range(1, n):
        strides[v] = strides[v - 1] * radix[v - 1]
    counts = np.zeros(1 << m.size, dtype=np.int64)
    for start in range(0, total, CHUNK):
        idx = np.arange(start, min(start + CHUNK, total), dtype=np.int64)
        part = [choices[v][(idx // strides[v]) % radix[v]] for v in range(n)]
        valid = np.ones(idx.shape, dtype=bool)
        for u, v, tab in pair_tables:
            valid &= tab[part[u], part[v]]
        image = reduce(np.bitwise_or, (np.left_shift(1, p) for p in part))
        counts += np.bincount(image[valid], minlength=1 << m.size)
    return {int(s): int(c) for s, c in enumerate(counts) if c}


def brute_Z(m: PartitionMatrix, g: SimpleGraph) -> int:
    """Number of ``m``-partitions of ``g``, by exhaustive enumeration."""
    return sum(image_counts(m, g).values())


def brute_Z_surjective(m: PartitionMatrix, g: SimpleGraph, s: int) -> int:
    return image_counts(m, g).get(s, 0)


def count_on_parts(m: PartitionMatrix, parts: int, g: SimpleGraph) -> int:
    """Partitions of ``g`` using only ``parts``: the count for the principal
    submatrix on ``parts`` (1 or 0 for the empty submatrix)."""
    return sum(image_counts(m, g, parts).values())


def count_with_lists(m: PartitionMatrix, g: SimpleGraph, lists: Sequence[int]) -> int:
    return sum(image_counts(m, g, lists).values())


# twin-compressed exact counting ---------------------------------------------

def twin_classes(g: SimpleGraph, lists: Sequence[int]) -> list[tuple[tuple[int, ...], bool]]:
    """Vertex classes ``(members, internally_adjacent)``: false twins (same open
    neighbourhood) and true twins (same closed neighbourhood) with equal lists."""
    nbr = [frozenset(g.neighbours(v)) for v in range(g.n)]
    groups: dict = {}
    for v in range(g.n):
        groups.setdefault(("open", nbr[v], lists[v]), []).append(v)
    classes = []
    rest = []
    for key, vs in groups.items():
        if len(vs) > 1:
            classes.append((tuple(vs), False))
        else:
            rest.extend(vs)
    groups = {}
    for v in sorted(rest):
        groups.setdefault(("closed", nbr[v] | {v}, lists[v]), []).append(v)
    for vs in groups.values():
        classes.append((tuple(vs), len(vs) > 1))
    classes.sort()
    return classes


def _class_weights(m: PartitionMatrix, size: int, lst: int, adjacent: bool) -> dict[int, int]:
    ok = (ONE, STAR) if adjacent else (ZERO, STAR)
    ent = m.entries
    if size == 1:
        return {1 << i: 1 for i in bits(lst)}
    out = {}
    for s in range(1, 1 << m.size):
        if s & ~lst or popcount(s) > size:
            continue
        members = bits(s)
        if any(ent[i][j] not in ok for i, j in combinations(members, 2)):
            continue
        ways = [1] + [0] * size
        for i in members:
            cap = size if ent[i][i] in ok else 1
            new = [0] * (size + 1)
            for j, w in enumerate(ways):
                if w:
                    for t in range(1, min(cap, size - j) + 1):
                        new[j + t] += w * comb(j + t, t)
            ways = new
        if ways[size]:
            out[s] = ways[size]
    return out


def exact_image_counts(
    m: PartitionMatrix, g: SimpleGraph, lists: Sequence[int] | int | None = None
) -> dict[int, int]:
    """Same tallies as ``image_counts`` with twin vertices handled in bulk."""
    lists = _lists(m, g, lists)
    if g.n == 0:
        return {0: 1}
    classes = twin_classes(g, lists)
    weights = [
        list(_class_weights(m, len(vs), lists[vs[0]], adj).items()) for vs, adj in classes
    ]
    on_ok = [0] * m.size
    off_ok = [0] * m.size
    for i in range(m.size):
        for j in range(m.size):
            if m.entries[i][j] in (ONE, STAR):
                on_ok[i] |= 1 << j
            if m.entries[i][j] in (ZERO, STAR):
                off_ok[i] |= 1 << j

    def allowed_with(s: int, adjacent: bool) -> int:
        table = on_ok if adjacent else off_ok
        acc = (1 << m.size) - 1
        for i in bits(s):
            acc &= table[i]
        return acc

    reps = [vs[0] for vs, _ in classes]
    nc = len(classes)
    adj = [[g.has_edge(reps[a], reps[b]) if a != b else False for b in range(nc)] for a in range(nc)]
    out: dict[int, int] = {}

    def walk(a: int, chosen: list[int], union: int, weight: int):
        if a == nc:
            out[union] = out.get(union, 0) + weight
            return
        for s, w in weights[a]:
            if all(s & ~allowed_with(chosen[b], adj[a][b]) == 0 for b in range(a)):
                chosen.append(s)
                walk(a + 1, chosen, union | s, weight * w)
                chosen.pop()

    walk(0, [], 0, 1)
    return {s: c for s, c in out.items() if c}


def exact_Z(m: PartitionMatrix, g: SimpleGraph, lists: Sequence[int] | int | None = None) -> int:
    return sum(exact_image_counts(m, g, lists).values())
