"""String-metric matching: nine similarity measures plus optimal assignment.

Labels are normalized once (case-fold, underscore/hyphen to space, collapsed
whitespace), a dense similarity matrix is built, and the best one-to-one
matching is extracted with the Hungarian method.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import List, Sequence, Tuple

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import EmptyTable
from .ingest import LabelTable
from .model import Alignment, Correspondence, canonicalize_alignment


class MetricKind(Enum):
    EQUAL = "equal"
    HAMMING = "hamming"
    JARO = "jaro"
    JARO_WINKLER = "jarowinkler"
    LEVENSHTEIN = "levenshtein"
    NGRAM = "ngram"
    NEEDLEMAN_WUNSCH = "needlemanwunsch"
    SMOA = "smoa"
    SUBSTRING = "substring"


_WHITESPACE = re.compile(r"\s+")


def normalize(raw_label: str) -> str:
    """Case-fold, map '_' and '-' to spaces, collapse whitespace, trim."""
    text = raw_label.casefold().replace("_", " ").replace("-", " ")
    return _WHITESPACE.sub(" ", text).strip()


def _equal(a: str, b: str) -> float:
    return 1.0 if a == b else 0.0


def _hamming(a: str, b: str) -> float:
    longer = max(len(a), len(b))
    if longer == 0:
        return 1.0
    mismatches = sum(x != y for x, y in zip(a, b)) + abs(len(a) - len(b))
    return 1.0 - mismatches / longer


def _levenshtein_distance(a: str, b: str) -> int:
    if not a:
        return len(b)
    if not b:
        return len(a)
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i]
        for j, cb in enumerate(b, start=1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def _levenshtein(a: str, b: str) -> float:
    longer = max(len(a), len(b))
    if longer == 0:
        return 1.0
    return 1.0 - _levenshtein_distance(a, b) / longer


def _jaro(a: str, b: str) -> float:
    if not a and not b:
        return 1.0
    if not a or not b:
        return 0.0
    if a == b:
        return 1.0
    window = max(len(a), len(b)) // 2 - 1
    matched_b = [False] * len(b)
    matches_a = []
    for i, ca in enumerate(a):
        lo = max(0, i - window)
        hi = min(len(b), i + window + 1)
        for j in range(lo, hi):
            if not matched_b[j] and b[j] == ca:
                matched_b[j] = True
                matches_a.append(ca)
                break
    m = len(matches_a)
    if m == 0:
        return 0.0
    matches_b = [b[j] for j in range(len(b)) if matched_b[j]]
    transpositions = sum(x != y for x, y in zip(matches_a, matches_b)) // 2
    return (m / len(a) + m / len(b) + (m - transpositions) / m) / 3.0


_WINKLER_SCALE = 0.1
_WINKLER_MAX_PREFIX = 4


def _common_prefix_len(a: str, b: str, cap: int = _WINKLER_MAX_PREFIX) -> int:
    n = 0
    for x, y in zip(a, b):
        if x != y or n >= cap:
            break
        n += 1
    return n


def _jaro_winkler(a: str, b: str) -> float:
    jaro = _jaro(a, b)
    prefix = _common_prefix_len(a, b)
    return jaro + prefix * _WINKLER_SCALE * (1.0 - jaro)


def _trigrams(s: str) -> List[str]:
    padded = "##" + s + "##"
    return [padded[i:i + 3] for i in range(len(padded) - 2)]


def _ngram(a: str, b: str) -> float:
    # trigram Dice; too-short strings degenerate to exact comparison
    if len(a) < 3 or len(b) < 3:
        return _equal(a, b)
    ta, tb = _trigrams(a), _trigrams(b)
    common = 0
    pool = {}
    for g in ta:
        pool[g] = pool.get(g, 0) + 1
    for g in tb:
        if pool.get(g, 0) > 0:
            pool[g] -= 1
            common += 1
    return 2.0 * common / (len(ta) + len(tb))


def _needleman_wunsch(a: str, b: str) -> float:
    # global alignment distance: substitution cost 1, gap cost 2 per character
    longer = max(len(a), len(b))
    if longer == 0:
        return 1.0
    gap = 2
    prev = [j * gap for j in range(len(b) + 1)]
    for i, ca in enumerate(a, start=1):
        cur = [i * gap]
        for j, cb in enumerate(b, start=1):
            cur.append(min(prev[j] + gap, cur[j - 1] + gap, prev[j - 1] + (ca != cb)))
        prev = cur
    return 1.0 - prev[-1] / (2.0 * longer)


def _longest_common_substring(a: str, b: str) -> Tuple[int, int, int]:
    """(length, start_a, start_b) of one longest common substring."""
    best = (0, 0, 0)
    prev = [0] * (len(b) + 1)
    for i in range(1, len(a) + 1):
        cur = [0] * (len(b) + 1)
        for j in range(1, len(b) + 1):
            if a[i - 1] == b[j - 1]:
                cur[j] = prev[j - 1] + 1
                if cur[j] > best[0]:
                    best = (cur[j], i - cur[j], j - cur[j])
        prev = cur
    return best


def _substring(a: str, b: str) -> float:
    total = len(a) + len(b)
    if total == 0:
        return 1.0
    return 2.0 * _longest_common_substring(a, b)[0] / total


_SMOA_P = 0.6


def _smoa_raw(a: str, b: str) -> float:
    """Stoilos measure on its native [-1, 1] scale."""
    if not a and not b:
        return 1.0
    if not a or not b:
        return -1.0
    len_a, len_b = len(a), len(b)
    # iterative removal of longest common substrings
    common_len = 0
    s1, s2 = a, b
    while True:
        length, i, j = _longest_common_substring(s1, s2)
        if length == 0:
            break
        common_len += length
        s1 = s1[:i] + s1[i + length:]
        s2 = s2[:j] + s2[j + length:]
    comm = 2.0 * common_len / (len_a + len_b)
    u1 = (len_a - common_len) / len_a
    u2 = (len_b - common_len) / len_b
    denom = _SMOA_P + (1.0 - _SMOA_P) * (u1 + u2 - u1 * u2)
    diff = 0.0 if denom == 0 else (u1 * u2) / denom
    winkler_impr = _common_prefix_len(a, b) * _WINKLER_SCALE * (1.0 - comm)
    return comm - diff + winkler_impr


def _smoa(a: str, b: str) -> float:
    # map [-1, 1] onto [0, 1] so the matrix contract holds
    return min(1.0, max(0.0, (_smoa_raw(a, b) + 1.0) / 2.0))


_METRICS = {
    MetricKind.EQUAL: _equal,
    MetricKind.HAMMING: _hamming,
    MetricKind.JARO: _jaro,
    MetricKind.JARO_WINKLER: _jaro_winkler,
    MetricKind.LEVENSHTEIN: _levenshtein,
    MetricKind.NGRAM: _ngram,
    MetricKind.NEEDLEMAN_WUNSCH: _needleman_wunsch,
    MetricKind.SMOA: _smoa,
    MetricKind.SUBSTRING: _substring,
}


def similarity(metric: MetricKind, a: str, b: str) -> float:
    """Similarity in [0, 1]; symmetric, and 1.0 on equal non-empty strings."""
    if not a and not b:
        return 1.0
    if not a or not b:
        return 0.0
    value = _METRICS[metric](a, b)
    return min(1.0, max(0.0, value))


@dataclass(frozen=True)
class SimilarityMatrix:
    row_ids: Tuple[str, ...]
    col_ids: Tuple[str, ...]
    s: np.ndarray


def build_similarity_matrix(
    src: LabelTable, tgt: LabelTable, metric: MetricKind
) -> SimilarityMatrix:
    if len(src) == 0 or len(tgt) == 0:
        raise EmptyTable("label tables must be non-empty")
    src_norm = [(id_, normalize(label)) for id_, label in src.rows]
    tgt_norm = [(id_, normalize(label)) for id_, label in tgt.rows]
    s = np.zeros((len(src_norm), len(tgt_norm)))
    for i, (_, la) in enumerate(src_norm):
        for j, (_, lb) in enumerate(tgt_norm):
            s[i, j] = similarity(metric, la, lb)
    return SimilarityMatrix(
        row_ids=tuple(id_ for id_, _ in src_norm),
        col_ids=tuple(id_ for id_, _ in tgt_norm),
        s=s,
    )


def hungarian_assign(sim: SimilarityMatrix) -> List[Tuple[int, int]]:
    """Optimal maximum-total-similarity one-to-one assignment.

    Rectangular matrices are handled directly; min(rows, cols) pairs are
    returned, sorted by row index.
    """
    rows, cols = linear_sum_assignment(sim.s, maximize=True)
    return sorted(zip(rows.tolist(), cols.tolist()))


def extract_alignment(
    sim: SimilarityMatrix,
    assignment: Sequence[Tuple[int, int]],
    threshold: float,
    system_name: str,
) -> Alignment:
    """Keep assigned pairs with similarity >= threshold; confidence = similarity."""
    if not 0.0 <= threshold <= 1.0:
        raise ValueError("threshold must lie in [0, 1]")
    kept = [
        Correspondence(sim.row_ids[i], sim.col_ids[j], "=", float(sim.s[i, j]))
        for i, j in assignment
        if sim.s[i, j] >= threshold
    ]
    return canonicalize_alignment(kept, system_name)


def match(
    src: LabelTable,
    tgt: LabelTable,
    metric: MetricKind,
    threshold: float,
    system_name: str,
) -> Alignment:
    """Full pipeline: similarity matrix -> assignment -> thresholded alignment."""
    sim = build_similarity_matrix(src, tgt, metric)
    return extract_alignment(sim, hungarian_assign(sim), threshold, system_name)
