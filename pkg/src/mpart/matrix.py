"""Symmetric {0,1,*} matrices, part-sets and canonical forms.

Parts are the integers ``0..size-1``; for display they are named
``a, b, c, ...``.  A part-set is an ``int`` bitmask over the parts.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

MAX_SIZE = 8
PART_NAMES = "abcdefgh"


class Symbol(enum.IntEnum):
    """Matrix entry.  The integer values give the order 0 < 1 < *."""

    ZERO = 0
    ONE = 1
    STAR = 2

    @property
    def char(self) -> str:
        return "01*"[self]

    @classmethod
    def from_char(cls, ch: str) -> "Symbol":
        try:
            return cls("01*".index(ch))
        except ValueError:
            raise ValueError(f"invalid matrix symbol {ch!r}; expected one of 0, 1, *") from None

    def flipped(self) -> "Symbol":
        if self is Symbol.STAR:
            return self
        return Symbol(1 - self)


ZERO, ONE, STAR = Symbol.ZERO, Symbol.ONE, Symbol.STAR

Block = tuple[tuple[Symbol, ...], ...]


# part-sets ---------------------------------------------------------------

def bits(mask: int) -> list[int]:
    """Members of a part-set in increasing order."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def partset(members: Iterable[int]) -> int:
    m = 0
    for i in members:
        m |= 1 << i
    return m


def full_set(size: int) -> int:
    return (1 << size) - 1


def set_name(mask: int) -> str:
    """``0b1011`` -> ``"abd"``; the empty set renders as ``"{}"``."""
    if not mask:
        return "{}"
    return "".join(PART_NAMES[i] for i in bits(mask))


def parse_set(text: str, size: int | None = None) -> int:
    """Parse ``"abd"`` or ``"0,1,3"`` into a part-set."""
    text = text.strip()
    if text in ("", "{}"):
        return 0
    if "," in text or text.isdigit():
        members = [int(t) for t in text.split(",") if t.strip()]
    else:
        try:
            members = [PART_NAMES.index(ch) for ch in text]
        except ValueError:
            raise ValueError(f"invalid part-set {text!r}") from None
    if size is not None and any(i < 0 or i >= size for i in members):
        raise ValueError(f"part-set {text!r} out of range for size {size}")
    return partset(members)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


# word order ---------------------------------------------------------------

@lru_cache(maxsize=None)
def word_positions(size: int) -> tuple[tuple[int, int], ...]:
    """Upper-triangle read-off order: the diagonal, then each super-diagonal
    by increasing offset, each read top to bottom.

    For size 4 this is aa bb cc dd ab bc cd ac bd ad.
    """
    return tuple((i, i + off) for off in range(size) for i in range(size - off))


@lru_cache(maxsize=None)
def _position_index(size: int) -> dict[tuple[int, int], int]:
    idx = {}
    for t, (i, j) in enumerate(word_positions(size)):
        idx[(i, j)] = t
        idx[(j, i)] = t
    return idx


def size_from_word_length(length: int) -> int:
    n = 0
    while n * (n + 1) // 2 < length:
        n += 1
    if n * (n + 1) // 2 != length:
        raise ValueError(f"word length {length} is not a triangular number")
    return n


# the matrix -----------------------------------------------------------------

@dataclass(frozen=True)
class PartitionMatrix:
    """A symmetric matrix over {0, 1, *}, indexed by parts ``0..size-1``."""

    size: int
    entries: Block

    def __post_init__(self):
        if not 1 <= self.size <= MAX_SIZE:
            raise ValueError(f"matrix size must be between 1 and {MAX_SIZE}, got {self.size}")
        if len(self.entries) != self.size or any(len(r) != self.size for r in self.entries):
            raise ValueError("entries must form a size x size grid")
        for i in range(self.size):
            for j in range(i + 1, self.size):
                if self.entries[i][j] != self.entries[j][i]:
                    raise ValueError(
                        f"matrix is not symmetric: entry ({PART_NAMES[i]},{PART_NAMES[j]}) = "
                        f"{self.entries[i][j].char} but ({PART_NAMES[j]},{PART_NAMES[i]}) = "
                        f"{self.entries[j][i].char}"
                    )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Symbol | str | int]]) -> "PartitionMatrix":
        def conv(x):
            if isinstance(x, Symbol):
                return x
            if isinstance(x, str):
                return Symbol.from_char(x)
            return Symbol(x)

        ents = tuple(tuple(conv(x) for x in row) for row in rows)
        return cls(len(ents), ents)

    @classmethod
    def from_word(cls, word: Sequence[Symbol] | str) -> "PartitionMatrix":
        syms = [Symbol.from_char(c) if isinstance(c, str) else Symbol(c) for c in word]
        n = size_from_word_length(len(syms))
        grid = [[ZERO] * n for _ in range(n)]
        for t, (i, j) in enumerate(word_positions(n)):
            grid[i][j] = grid[j][i] = syms[t]
        return cls(n, tuple(tuple(r) for r in grid))

    @classmethod
    def parse(cls, text: str) -> "PartitionMatrix":
        """Accept ``"001*01111*"`` (10-symbol word, size 4 only) or
        ``"001*/0011/1111/*11*"`` (rows separated by ``/``)."""
        text = "".join(text.split())
        if not text:
            raise ValueError("empty matrix text")
        if "/" in text:
            rows = text.split("/")
            if any(len(r) != len(rows) for r in rows):
                raise ValueError(f"matrix rows must all have length {len(rows)}: {text!r}")
            return cls.from_rows([list(r) for r in rows])
        if len(text) != 10:
            raise ValueError(
                f"word format needs exactly 10 symbols (4x4 matrices); got {len(text)}. "
                "Use the row format 'r1/r2/...' for other sizes"
            )
        return cls.from_word(text)

    def __getitem__(self, ij: tuple[int, int]) -> Symbol:
        return self.entries[ij[0]][ij[1]]

    @property
    def parts(self) -> int:
        return full_set(self.size)

    def word(self) -> tuple[Symbol, ...]:
        return tuple(self.entries[i][j] for i, j in word_positions(self.size))

    def word_str(self) -> str:
        return "".join(s.char for s in self.word())

    def rows_str(self) -> str:
        return "/".join("".join(s.char for s in row) for row in self.entries)

    def __str__(self) -> str:
        return self.word_str() if self.size == 4 else self.rows_str()

    def pretty(self) -> str:
        names = PART_NAMES[: self.size]
        lines = ["  " + " ".join(names)]
        for i, row in enumerate(self.entries):
            lines.append(names[i] + " " + " ".join(s.char for s in row))
        return "\n".join(lines)


# operations ---------------------------------------------------------------

def restrict(m: PartitionMatrix, rows: int, cols: int) -> Block:
    """The block of ``m`` on the given row and column part-sets."""
    if not rows or not cols:
        raise ValueError("empty restriction")
    cs = bits(cols)
    return tuple(tuple(m.entries[i][j] for j in cs) for i in bits(rows))


def submatrix(m: PartitionMatrix, parts: int) -> PartitionMatrix:
    """Principal submatrix, relabelled onto ``0..|parts|-1``."""
    return PartitionMatrix(popcount(parts), restrict(m, parts, parts))


def complement(m: PartitionMatrix) -> PartitionMatrix:
    return PartitionMatrix(m.size, tuple(tuple(s.flipped() for s in row) for row in m.entries))


def permute(m: PartitionMatrix, rho: Sequence[int]) -> PartitionMatrix:
    """The matrix ``m'`` with ``m'[rho[i], rho[j]] == m[i, j]``."""
    n = m.size
    if sorted(rho) != list(range(n)):
        raise ValueError(f"not a permutation of 0..{n - 1}: {list(rho)}")
    grid = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            grid[rho[i]][rho[j]] = m.entries[i][j]
    return PartitionMatrix(n, tuple(tuple(r) for r in grid))


def w_word(m: PartitionMatrix) -> str:
    return m.word_str()


def is_pure(block: PartitionMatrix | Block) -> bool:
    """True if the block has no 0s or has no 1s."""
    rows = block.entries if isinstance(block, PartitionMatrix) else block
    seen = {s for row in rows for s in row}
    return ZERO not in seen or ONE not in seen


def is_pure_on(m: PartitionMatrix, rows: int, cols: int) -> bool:
    """``is_pure(restrict(m, rows, cols))`` without building the block."""
    has0 = has1 = False
    cs = bits(cols)
    for i in bits(rows):
        r = m.entries[i]
        for j in cs:
            s = r[j]
            if s is ZERO:
                has0 = True
            elif s is ONE:
                has1 = True
        if has0 and has1:
            return False
    return True


# canonical forms ----------------------------------------------------------

@lru_cache(maxsize=None)
def orbit_maps(size: int) -> tuple[tuple[int, ...], ...]:
    # one index map per permutation: variant_word[t] = word[map[t]]
    pos = word_positions(size)
    index = _position_index(size)
    maps = []
    for sigma in itertools.permutations(range(size)):
        maps.append(tuple(index[(sigma[i], sigma[j])] for i, j in pos))
    return tuple(maps)


_FLIP = (1, 0, 2)


def min_variant_word(word: Sequence[int], size: int, with_complement: bool = True) -> tuple[int, ...]:
    """Lexicographically least word over the permutation orbit of ``word``
    (and of its 0/1 complement when ``with_complement``)."""
    word = tuple(int(s) for s in word)
    words = [word]
    if with_complement:
        words.append(tuple(_FLIP[s] for s in word))
    best = None
    for w in words:
        for mp in orbit_maps(size):
            v = tuple(w[t] for t in mp)
            if best is None or v < best:
                best = v
    return best


def canonical_key(m: PartitionMatrix, with_complement: bool = True) -> str:
    """Key shared by exactly the matrices equivalent to ``m`` under part
    relabelling (and, by default, 0/1 complement)."""
    return _key_cached(m.word(), m.size, with_complement)


@lru_cache(maxsize=200_000)
def _key_cached(word: tuple[Symbol, ...], size: int, with_complement: bool) -> str:
    return "".join("01*"[s] for s in min_variant_word(word, size, with_complement))


def perm_key(m: PartitionMatrix) -> str:
    """Key for equivalence under relabelling only (no complement)."""
    return canonical_key(m, with_complement=False)


def canonical_form(m: PartitionMatrix, with_complement: bool = True) -> PartitionMatrix:
    return PartitionMatrix.from_word(canonical_key(m, with_complement))


def orbit_size(m: PartitionMatrix) -> int:
    """Number of distinct matrices equivalent to ``m`` (relabelling and complement)."""
    word = tuple(int(s) for s in m.word())
    seen = set()
    for w in (word, tuple(_FLIP[s] for s in word)):
        for mp in orbit_maps(m.size):
            seen.add(tuple(w[t] for t in mp))
    return len(seen)
