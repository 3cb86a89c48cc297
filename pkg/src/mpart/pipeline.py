"""The census: every symmetric 4x4 {0,1,*} matrix up to relabelling and
complement, classified, then cross-checked against the exact
derectangularising-sequence decider."""

from __future__ import annotations

import csv
import io
import json
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .derect import MAX_DOUBLETON_SIZE, DerectWitness, check_witness, doubletons_tractable, has_derect_sequence
from .interpolation import interpolation_hardness_test
from .matrix import PartitionMatrix, orbit_maps, canonical_key, is_pure, min_variant_word, orbit_size, parse_set
from .oracle import Classification, Method, Verdict, pure_classification, small_matrix_classification


# the six matrices the automatic tests leave open; all are hard
EXCEPTION_ROWS = {
    "lemma6": ["00**", "001*", "*100", "**00"],
    "lemma7-M1": ["00**", "000*", "*011", "**11"],
    "lemma7-M2": ["00**", "000*", "*01*", "***1"],
    "lemma7-M3": ["0***", "*00*", "*01*", "***1"],
    "hand3": ["00**", "001*", "*11*", "***1"],
    "hand4": ["0***", "**0*", "*0*1", "**1*"],
}


def exception_matrix(exc_id: str) -> PartitionMatrix:
    return PartitionMatrix.from_rows([list(r) for r in EXCEPTION_ROWS[exc_id]])


@dataclass(frozen=True)
class ExceptionRegistry:
    keys: dict[str, str]

    @classmethod
    def build(cls) -> "ExceptionRegistry":
        keys = {canonical_key(exception_matrix(i)): i for i in EXCEPTION_ROWS}
        if len(keys) != len(EXCEPTION_ROWS):
            raise ValueError("exception matrices are not pairwise inequivalent")
        return cls(keys)

    def lookup(self, m: PartitionMatrix) -> str | None:
        if m.size != 4:
            return None
        return self.keys.get(canonical_key(m))


REGISTRY = ExceptionRegistry.build()


@lru_cache(maxsize=200_000)
def classify(m: PartitionMatrix, exceptions: bool = True) -> Classification:
    """Pure test, then the doubleton tractability test, then the gadget
    interpolation test; anything left is looked up in the exception
    registry (when enabled) or reported unresolved."""
    if m.size <= 3:
        return small_matrix_classification(m)
    if is_pure(m):
        return pure_classification(m)
    if m.size <= MAX_DOUBLETON_SIZE and doubletons_tractable(m):
        return Classification(Verdict.POLYNOMIAL_TIME, Method.DOUBLETONS)
    hard = interpolation_hardness_test(m)
    if hard is not None:
        return hard
    if exceptions:
        exc = REGISTRY.lookup(m)
        if exc is not None:
            return Classification(Verdict.SHARP_P_COMPLETE, Method.EXCEPTION, {"id": exc})
    return Classification(Verdict.UNRESOLVED)


def canonical_words(size: int) -> np.ndarray:
    """Base-3 codes (0 < 1 < *, first position most significant) of every
    word that is the least member of its orbit, in increasing order."""
    length = size * (size + 1) // 2
    codes = np.arange(3**length, dtype=np.int64)
    digits = np.empty((length, codes.size), dtype=np.int8)
    rest = codes.copy()
    for t in range(length - 1, -1, -1):
        digits[t] = rest % 3
        rest //= 3
    flip = np.array([1, 0, 2], dtype=np.int8)
    keep = np.ones(codes.size, dtype=bool)
    for flipped in (False, True):
        src = flip[digits] if flipped else digits
        for mp in orbit_maps(size):
            variant = np.zeros(codes.size, dtype=np.int64)
            for t in mp:
                variant *= 3
                variant += src[t]
            keep &= codes <= variant
    return codes[keep]


def enumerate_canonical(size: int = 4):
    """One representative per equivalence class, the lexicographically least
    word (0 < 1 < *), yielded in increasing word order."""
    length = size * (size + 1) // 2
    for code in canonical_words(size):
        word = []
        code = int(code)
        for _ in range(length):
            word.append("01*"[code % 3])
            code //= 3
        yield PartitionMatrix.from_word("".join(reversed(word)))


@dataclass
class CensusEntry:
    key: str
    matrix: PartitionMatrix
    classification: Classification
    derect_witness: DerectWitness | None
    orbit_size: int

    def witness_json(self):
        c = self.classification
        if c.method is Method.INTERPOLATION:
            return {k: c.detail[k] for k in ("pi", "tau", "ell", "s", "hard", "sets")}
        if c.method is Method.EXCEPTION:
            return {"id": c.detail["id"]}
        return None

    def to_json(self) -> dict:
        return {
            "key": self.key,
            "verdict": self.classification.verdict.value,
            "method": self.classification.method_text()
            if self.classification.verdict is not Verdict.UNRESOLVED
            else None,
            "witness": self.witness_json(),
            "derect": self.derect_witness.sequence_names() if self.derect_witness else None,
            "orbit_size": self.orbit_size,
        }


class CensusError(RuntimeError):
    pass


@dataclass
class CensusReport:
    size: int
    exceptions: bool
    entries: list[CensusEntry]
    summary: dict = field(default_factory=dict)

    @property
    def unresolved(self) -> list[CensusEntry]:
        return [e for e in self.entries if e.classification.verdict is Verdict.UNRESOLVED]

    def to_json(self) -> str:
        return json.dumps(
            {"summary": self.summary, "entries": [e.to_json() for e in self.entries]}, indent=1
        )

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "verdict", "method", "witness", "derect", "orbit_size"])
        for e in self.entries:
            j = e.to_json()
            w.writerow(
                [
                    j["key"],
                    j["verdict"],
                    j["method"] or "",
                    json.dumps(j["witness"], separators=(",", ":")) if j["witness"] else "",
                    " ".join(j["derect"]) if j["derect"] else "",
                    j["orbit_size"],
                ]
            )
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [f"{e.key} {e.classification}" for e in self.entries]
        lines.append("")
        lines.extend(f"{k}: {v}" for k, v in _flatten(self.summary))
        return "\n".join(lines) + "\n"


def _flatten(d: dict, prefix: str = ""):
    for k, v in d.items():
        if isinstance(v, dict):
            yield from _flatten(v, f"{prefix}{k}.")
        else:
            yield f"{prefix}{k}", v


def _classify_word(args):
    word, exceptions = args
    m = PartitionMatrix.from_word(word)
    return classify(m, exceptions), has_derect_sequence(m)


def run_census(size: int = 4, exceptions: bool = True, jobs: int = 1, strict: bool = True) -> CensusReport:
    """Classify every canonical representative.

    With ``strict`` and size 4, the unresolved set (exceptions disabled) must
    be exactly the six registry classes, and none may remain otherwise.
    """
    if not 1 <= size <= 5:
        raise ValueError("census supports sizes 1..5")
    reps = list(enumerate_canonical(size))
    words = [m.word_str() for m in reps]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(jobs) as ex:
            results = list(ex.map(_classify_word, [(w, exceptions) for w in words], chunksize=32))
    else:
        results = [_classify_word((w, exceptions)) for w in words]
    entries = [
        CensusEntry(m.word_str(), m, cls, wit, orbit_size(m)) for m, (cls, wit) in zip(reps, results)
    ]
    entries.sort(key=lambda e: min_variant_word(e.matrix.word(), size))
    verdicts = Counter(e.classification.verdict.value for e in entries)
    methods = Counter(
        e.classification.method_text().split("(")[0]
        for e in entries
        if e.classification.verdict is not Verdict.UNRESOLVED
    )
    summary = {
        "size": size,
        "exceptions_enabled": exceptions,
        "raw_matrices": 3 ** (size * (size + 1) // 2),
        "orbit_total": sum(e.orbit_size for e in entries),
        "classes": len(entries),
        "verdicts": dict(sorted(verdicts.items())),
        "methods": dict(sorted(methods.items())),
        "unresolved": [e.key for e in entries if e.classification.verdict is Verdict.UNRESOLVED],
    }
    report = CensusReport(size, exceptions, entries, summary)
    if strict and size == 4:
        got = set(summary["unresolved"])
        want = set() if exceptions else set(REGISTRY.keys)
        if got != want:
            raise CensusError(
                f"unresolved classes {sorted(got)} do not match expected {sorted(want)}"
            )
    return report


@dataclass
class CrossCheck:
    mismatches: list[dict]
    exception_witnesses: dict[str, bool]
    checked: int

    @property
    def ok(self) -> bool:
        return not self.mismatches and all(self.exception_witnesses.values())

    def to_text(self) -> str:
        lines = [f"checked {self.checked} classes, {len(self.mismatches)} mismatches"]
        for mm in self.mismatches:
            lines.append(f"MISMATCH {mm['key']}: {mm['verdict']} derect={mm['derect']}")
        for exc, ok in self.exception_witnesses.items():
            lines.append(f"exception {exc}: (ab, cd) {'validates' if ok else 'FAILS'}")
        return "\n".join(lines)


def cross_check_dichotomy(report: CensusReport) -> CrossCheck:
    """Hard exactly when a derectangularising sequence exists; and ``ab, cd``
    is such a sequence for each of the six exception matrices."""
    mismatches = []
    for e in report.entries:
        hard = e.classification.verdict is Verdict.SHARP_P_COMPLETE
        easy = e.classification.verdict is Verdict.POLYNOMIAL_TIME
        wit = e.derect_witness
        if (hard and wit is None) or (easy and wit is not None) or not (hard or easy):
            mismatches.append(
                {
                    "key": e.key,
                    "verdict": str(e.classification),
                    "derect": str(wit) if wit else None,
                }
            )
        elif wit is not None and not check_witness(e.matrix, wit.sequence):
            mismatches.append({"key": e.key, "verdict": "invalid witness", "derect": str(wit)})
    ab, cd = parse_set("ab"), parse_set("cd")
    exc_ok = {i: check_witness(exception_matrix(i), (ab, cd)) for i in EXCEPTION_ROWS}
    return CrossCheck(mismatches, exc_ok, len(report.entries))
