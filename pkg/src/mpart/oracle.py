"""Known easy/hard classification of small matrices and of pure matrices."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Any

from .matrix import STAR, PartitionMatrix, is_pure, partset, perm_key, submatrix


class Verdict(str, enum.Enum):
    POLYNOMIAL_TIME = "PolynomialTime"
    SHARP_P_COMPLETE = "SharpPComplete"
    UNRESOLVED = "Unresolved"

    def __str__(self) -> str:
        return self.value


class Method(str, enum.Enum):
    PURE_HOMOMORPHISM = "PureHomomorphism"
    IMPURE_SMALL = "ImpureSmall"
    DOUBLETONS = "Doubletons"
    INTERPOLATION = "Interpolation"
    EXCEPTION = "Exception"
    NONE = "None"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    method: Method = Method.NONE
    detail: dict[str, Any] = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        if self.verdict is Verdict.UNRESOLVED and self.method is not Method.NONE:
            raise ValueError("an unresolved classification carries no witness")

    @property
    def hard(self) -> bool:
        return self.verdict is Verdict.SHARP_P_COMPLETE

    @property
    def easy(self) -> bool:
        return self.verdict is Verdict.POLYNOMIAL_TIME

    def method_text(self) -> str:
        d = self.detail
        if self.method is Method.INTERPOLATION:
            return f"Interpolation(pi={d['pi']},tau={d['tau']},l={d['ell']},s={d['s']})"
        if self.method is Method.EXCEPTION:
            return f"Exception({d['id']})"
        return str(self.method)

    def __str__(self) -> str:
        if self.verdict is Verdict.UNRESOLVED:
            return str(self.verdict)
        return f"{self.verdict} via {self.method_text()}"


IS_KEY = perm_key(PartitionMatrix.from_rows(["**", "*0"]))
CLIQUE_KEY = perm_key(PartitionMatrix.from_rows(["**", "*1"]))


def is_IS_matrix(m: PartitionMatrix) -> bool:
    """Equivalent (by relabelling) to the independent-set matrix (* *; * 0)."""
    return m.size == 2 and perm_key(m) == IS_KEY


def is_Clique_matrix(m: PartitionMatrix) -> bool:
    """Equivalent (by relabelling) to the clique matrix (* *; * 1)."""
    return m.size == 2 and perm_key(m) == CLIQUE_KEY


def has_three_star_block(m: PartitionMatrix) -> bool:
    """Some rows {i,j}, columns {k,l} (i != j, k != l) hold exactly three stars."""
    ent = m.entries
    pairs = list(itertools.combinations(range(m.size), 2))
    for i, j in pairs:
        for k, l in pairs:
            stars = (ent[i][k] is STAR) + (ent[i][l] is STAR) + (ent[j][k] is STAR) + (ent[j][l] is STAR)
            if stars == 3:
                return True
    return False


def pure_matrix_hard(m: PartitionMatrix) -> bool:
    if not is_pure(m):
        raise ValueError("pure_matrix_hard needs a pure matrix")
    return has_three_star_block(m)


def has_hard_principal_pair(m: PartitionMatrix) -> bool:
    for i, j in itertools.combinations(range(m.size), 2):
        sub = submatrix(m, partset((i, j)))
        if is_IS_matrix(sub) or is_Clique_matrix(sub):
            return True
    return False


def small_matrix_classification(m: PartitionMatrix) -> Classification:
    """Classify a matrix of size at most 3 from the known small-case
    dichotomies: pure matrices by the three-star block test over all (not
    necessarily principal) 2x2 blocks, impure 2x2 always easy, impure 3x3
    hard exactly when a principal 2x2 block is the IS or clique matrix."""
    if m.size > 3:
        raise ValueError("use full pipeline for matrices larger than 3x3")
    if is_pure(m):
        hard = pure_matrix_hard(m)
        verdict = Verdict.SHARP_P_COMPLETE if hard else Verdict.POLYNOMIAL_TIME
        return Classification(verdict, Method.PURE_HOMOMORPHISM)
    if m.size <= 2:
        return Classification(Verdict.POLYNOMIAL_TIME, Method.IMPURE_SMALL)
    hard = has_hard_principal_pair(m)
    verdict = Verdict.SHARP_P_COMPLETE if hard else Verdict.POLYNOMIAL_TIME
    return Classification(verdict, Method.IMPURE_SMALL)


def pure_classification(m: PartitionMatrix) -> Classification:
    hard = pure_matrix_hard(m)
    return Classification(
        Verdict.SHARP_P_COMPLETE if hard else Verdict.POLYNOMIAL_TIME, Method.PURE_HOMOMORPHISM
    )

