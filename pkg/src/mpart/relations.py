"""Binary relations between part-sets: star relations, composition and
rectangularity."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .matrix import STAR, PartitionMatrix, bits, is_pure_on, set_name


@dataclass(frozen=True)
class BinaryRelation:
    """Relation between part-sets ``left`` and ``right``.

    ``rows[i]`` is the bitmask of parts related to ``i``; it is zero for every
    ``i`` outside ``left``.  ``size`` is the ambient number of parts.
    """

    left: int
    right: int
    rows: tuple[int, ...]

    def __post_init__(self):
        for i, r in enumerate(self.rows):
            if r & ~self.right or (r and not (self.left >> i) & 1):
                raise ValueError("relation pairs must lie in left x right")

    @classmethod
    def from_pairs(cls, size: int, left: int, right: int, pairs: Iterable[tuple[int, int]]) -> "BinaryRelation":
        rows = [0] * size
        for i, j in pairs:
            rows[i] |= 1 << j
        return cls(left, right, tuple(rows))

    @classmethod
    def equality(cls, size: int, parts: int) -> "BinaryRelation":
        return cls.from_pairs(size, parts, parts, ((i, i) for i in bits(parts)))

    @property
    def size(self) -> int:
        return len(self.rows)

    @property
    def pairs(self) -> frozenset[tuple[int, int]]:
        return frozenset((i, j) for i, r in enumerate(self.rows) for j in bits(r))

    def __contains__(self, pair: tuple[int, int]) -> bool:
        i, j = pair
        return bool((self.rows[i] >> j) & 1)

    def transpose(self) -> "BinaryRelation":
        return BinaryRelation.from_pairs(self.size, self.right, self.left, ((j, i) for i, j in self.pairs))

    def __str__(self) -> str:
        inner = ", ".join(f"({set_name(1 << i)},{set_name(1 << j)})" for i, j in sorted(self.pairs))
        return f"{{{inner}}} on {set_name(self.left)} x {set_name(self.right)}"


def star_relation(m: PartitionMatrix, x: int, y: int) -> BinaryRelation:
    """Pairs of ``x`` by ``y`` at which ``m`` has a star."""
    rows = [0] * m.size
    ys = bits(y)
    for i in bits(x):
        r = 0
        row = m.entries[i]
        for j in ys:
            if row[j] is STAR:
                r |= 1 << j
        rows[i] = r
    return BinaryRelation(x, y, tuple(rows))


def compose_rows(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    out = []
    for r in a:
        acc = 0
        j = 0
        while r:
            if r & 1:
                acc |= b[j]
            r >>= 1
            j += 1
        out.append(acc)
    return tuple(out)


def compose(r: BinaryRelation, s: BinaryRelation) -> BinaryRelation:
    """``{(i, k) : (i, j) in r and (j, k) in s for some j}``."""
    if r.right != s.left:
        raise ValueError(
            f"cannot compose: middle sets differ ({set_name(r.right)} vs {set_name(s.left)})"
        )
    if r.size != s.size:
        raise ValueError("relations live over different domains")
    return BinaryRelation(r.left, s.right, compose_rows(r.rows, s.rows))


def rows_rectangular(rows: tuple[int, ...]) -> bool:
    # (i,i'),(i,j'),(j,i') in R  =>  (j,j') in R, quantified over all i, j;
    # the inner i', j' quantifiers run bit-parallel: rows sharing a column
    # must be identical.
    n = len(rows)
    for i in range(n):
        ri = rows[i]
        if not ri:
            continue
        for j in range(i + 1, n):
            rj = rows[j]
            if ri & rj and ri != rj:
                return False
    return True


def is_rectangular(r: BinaryRelation) -> bool:
    return rows_rectangular(r.rows)


def is_star_rectangular(m: PartitionMatrix, x: int, y: int) -> bool:
    return is_rectangular(star_relation(m, x, y))


def is_purifying(m: PartitionMatrix, family: Iterable[int]) -> bool:
    """True if every block ``m|X x Y`` with ``X, Y`` in the family is pure."""
    fam = list(family)
    for a, x in enumerate(fam):
        for y in fam[a:]:
            if not is_pure_on(m, x, y):
                return False
    return True
