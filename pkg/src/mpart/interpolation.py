"""Gadget interpolation.

Attaching a clique or independent set of ``k`` vertices to a graph ``G``
(disjointly, or joined to every vertex of ``G``) splits the partition count
by the set ``S`` of parts the gadget occupies.  For ``k`` larger than the
number of parts the gadget's share is one of the functions ``f(ell, s, k)``,
so counts for enough values of ``k`` can be solved for the grouped terms.
A group that contains exactly one hard submatrix (or exactly the IS and
clique matrices) proves the whole matrix hard.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .combinatorics import f
from .linalg import determinant, echelon, rank, solve
from .matrix import ONE, STAR, ZERO, PartitionMatrix, Symbol, bits, full_set, is_pure, perm_key, popcount, set_name, submatrix
from .oracle import CLIQUE_KEY, IS_KEY, Classification, Method, Verdict, small_matrix_classification


def _allowed(pi: int) -> tuple[Symbol, Symbol]:
    return (ONE, STAR) if pi else (ZERO, STAR)


def E(pi: int, s: int, m: PartitionMatrix) -> int:
    """Parts ``j`` with ``m[i, j]`` in ``{pi, *}`` for every ``i`` in ``s``."""
    ok = _allowed(pi)
    out = 0
    members = bits(s)
    for j in range(m.size):
        if all(m.entries[i][j] in ok for i in members):
            out |= 1 << j
    return out


def ell_of(m: PartitionMatrix, s: int, tau: int) -> int:
    """How many parts of ``s`` have the diagonal entry ``1 - tau``."""
    forced = Symbol(1 - tau)
    return sum(1 for i in bits(s) if m.entries[i][i] is forced)


def in_excluded(m: PartitionMatrix, s: int, tau: int) -> bool:
    """``s`` can never be the exact image of a large gadget."""
    if ell_of(m, s, tau) == popcount(s):
        return True
    forced = Symbol(1 - tau)
    members = bits(s)
    return any(m.entries[i][j] is forced for i in members for j in members if i < j)


def surjective_gadget_count(m: PartitionMatrix, s: int, tau: int, k: int) -> int:
    if k <= m.size:
        raise ValueError("formula valid only for k > |D|")
    if in_excluded(m, s, tau):
        return 0
    return f(ell_of(m, s, tau), popcount(s), k)


def index_pairs(size: int) -> list[tuple[int, int]]:
    """``(ell, s)`` with ``0 <= ell < s <= size``, by ``s`` then ``ell``."""
    return [(ell, s) for s in range(1, size + 1) for ell in range(s)]


# submatrix verdicts -------------------------------------------------------

def submatrix_classification(sub: PartitionMatrix) -> Classification:
    if sub.size <= 3:
        return small_matrix_classification(sub)
    from .pipeline import classify

    return classify(sub)


@dataclass(frozen=True)
class AccessClass:
    key: str
    multiplicity: int
    verdict: Verdict
    is_self: bool
    sets: tuple[int, ...]
    images: tuple[int, ...]


@dataclass(frozen=True)
class AccessProfile:
    pi: int
    tau: int
    ell: int
    s: int
    sets: tuple[int, ...]
    classes: tuple[AccessClass, ...]

    def hard_classes(self) -> list[AccessClass]:
        return [c for c in self.classes if not c.is_self and c.verdict is Verdict.SHARP_P_COMPLETE]

    def unknown_classes(self) -> list[AccessClass]:
        return [c for c in self.classes if not c.is_self and c.verdict is Verdict.UNRESOLVED]

    def describe(self) -> str:
        parts = [f"pi={self.pi} tau={self.tau} l={self.ell} s={self.s}"]
        parts.append("sets: " + " ".join(set_name(x) for x in self.sets))
        for c in self.classes:
            tag = "self" if c.is_self else c.verdict.value
            parts.append(
                f"  class {c.key or '(empty)'} x{c.multiplicity} [{tag}] via "
                + ", ".join(set_name(x) for x in c.images)
            )
        return "\n".join(parts)


def profile_sets(m: PartitionMatrix, tau: int, ell: int, s: int) -> list[int]:
    return [
        x
        for x in range(1, full_set(m.size) + 1)
        if popcount(x) == s and not in_excluded(m, x, tau) and ell_of(m, x, tau) == ell
    ]


def access_profile(
    m: PartitionMatrix,
    pi: int,
    tau: int,
    ell: int,
    s: int,
    judge: Callable[[PartitionMatrix], Classification] = submatrix_classification,
) -> AccessProfile:
    if not 0 <= ell < s <= m.size:
        raise ValueError("access_profile needs 0 <= ell < s <= |D|")
    sets = profile_sets(m, tau, ell, s)
    groups: dict[str, list] = {}
    for x in sets:
        img = E(pi, x, m)
        if img == 0:
            key, verdict, is_self = "", Verdict.POLYNOMIAL_TIME, False
        elif img == m.parts:
            key, verdict, is_self = perm_key(m), Verdict.UNRESOLVED, True
        else:
            sub = submatrix(m, img)
            key, verdict, is_self = perm_key(sub), None, False
        g = groups.setdefault(key, [verdict, is_self, [], [], img])
        g[2].append(x)
        g[3].append(img)
    classes = []
    for key, (verdict, is_self, xs, imgs, first) in groups.items():
        if verdict is None:
            verdict = judge(submatrix(m, first)).verdict
        classes.append(AccessClass(key, len(xs), verdict, is_self, tuple(xs), tuple(imgs)))
    return AccessProfile(pi, tau, ell, s, tuple(sets), tuple(classes))


def qualifying(profile: AccessProfile) -> bool:
    if profile.unknown_classes():
        return False
    hard = profile.hard_classes()
    if len(hard) == 1:
        return True
    return len(hard) == 2 and {c.key for c in hard} == {IS_KEY, CLIQUE_KEY}


def interpolation_hardness_test(
    m: PartitionMatrix, judge: Callable[[PartitionMatrix], Classification] = submatrix_classification
) -> Classification | None:
    """Scan profiles in the order pi, tau, s, ell and return a hardness
    classification at the first qualifying one."""
    if m.size < 2 or is_pure(m):
        raise ValueError("interpolation_hardness_test needs an impure matrix of size >= 2")
    for pi in (0, 1):
        for tau in (0, 1):
            for ell, s in index_pairs(m.size):
                prof = access_profile(m, pi, tau, ell, s, judge)
                if qualifying(prof):
                    detail = {
                        "pi": pi,
                        "tau": tau,
                        "ell": ell,
                        "s": s,
                        "hard": [c.key for c in prof.hard_classes()],
                        "sets": [set_name(x) for x in prof.sets],
                    }
                    return Classification(Verdict.SHARP_P_COMPLETE, Method.INTERPOLATION, detail)
    return None


# the interpolation system -------------------------------------------------

@dataclass(frozen=True)
class InterpolationSystem:
    size: int
    k_values: tuple[int, ...]
    columns: tuple[tuple[int, int], ...]
    F: tuple[tuple[int, ...], ...]
    rank_certificate: dict = field(compare=False)


def build_interpolation_system(size: int) -> InterpolationSystem:
    """Pick gadget sizes ``k > size`` greedily, smallest first, keeping each
    one that raises the rank, until the matrix of ``f`` values is square and
    of full rank."""
    if not 2 <= size <= 8:
        raise ValueError("build_interpolation_system needs 2 <= size <= 8")
    cols = index_pairs(size)
    want = len(cols)
    ks: list[int] = []
    rows: list[list[int]] = []
    k = size
    while len(rows) < want:
        k += 1
        row = [f(ell, s, k) for ell, s in cols]
        if rank(rows + [row]) > len(rows):
            rows.append(row)
            ks.append(k)
    r, pivots = echelon(rows)
    det = determinant(rows)
    cert = {"rank": r, "pivot_columns": pivots, "determinant": det}
    if r != want or det == 0:
        raise ArithmeticError("interpolation matrix is singular")
    return InterpolationSystem(size, tuple(ks), tuple(cols), tuple(tuple(r) for r in rows), cert)


def solve_T(system: InterpolationSystem, zbar: Sequence[int], integral: bool = True) -> list[Fraction]:
    """Solve ``F T = Z`` exactly; with ``integral`` every entry must be a
    non-negative integer."""
    if len(zbar) != len(system.k_values):
        raise ValueError(f"expected {len(system.k_values)} counts, got {len(zbar)}")
    t = solve(system.F, zbar)
    if integral and any(x.denominator != 1 or x < 0 for x in t):
        raise ArithmeticError("inconsistent counts: solution is not a non-negative integer vector")
    return t
