"""Family-wise error rate control: adjusted p-values for N x N and N x 1 families.

All adjusters take a HypothesisSet and return adjusted p-values aligned with
the input hypothesis order.  Ties in raw p-values are broken by construction
order, which callers keep lexicographic for determinism.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, FrozenSet, List, Sequence, Tuple

from .errors import ModeMismatch, TooManySystems
from .model import Correction, Mode

DEFAULT_BERGMANN_CAP = 9


@dataclass(frozen=True)
class HypothesisSet:
    """Pairwise hypotheses with their raw p-values.

    In NxN mode the hypotheses must be all n(n-1)/2 unordered pairs of
    `systems`; in Nx1 mode the n-1 pairs involving the baseline.
    """

    systems: Tuple[str, ...]
    hypotheses: Tuple[Tuple[Tuple[str, str], float], ...]
    mode: Mode

    def __post_init__(self):
        n = len(self.systems)
        expected = n * (n - 1) // 2 if self.mode is Mode.NXN else n - 1
        if len(self.hypotheses) != expected:
            raise ValueError(
                f"{self.mode.value} with {n} systems needs {expected} hypotheses, "
                f"got {len(self.hypotheses)}"
            )
        for _, p in self.hypotheses:
            if not 0.0 <= p <= 1.0:
                raise ValueError("raw p-values must lie in [0, 1]")

    @property
    def k(self) -> int:
        return len(self.hypotheses)

    @property
    def raw_p(self) -> List[float]:
        return [p for _, p in self.hypotheses]


@dataclass(frozen=True)
class AdjustedResults:
    hypotheses: Tuple[Tuple[Tuple[str, str], float], ...]
    apv: Tuple[float, ...]
    method: Correction

    def rejected_at(self, alpha: float) -> List[int]:
        """Indices of hypotheses with APV strictly below alpha."""
        return [i for i, v in enumerate(self.apv) if v < alpha]


def _ordered_indices(p: Sequence[float]) -> List[int]:
    return sorted(range(len(p)), key=lambda i: (p[i], i))


def _stepdown(h: HypothesisSet, factor: Callable[[float, int], float],
              method: Correction) -> AdjustedResults:
    """Generic step-down adjustment: running max of factor(p_(j), j) over j <= i."""
    p = h.raw_p
    order = _ordered_indices(p)
    apv = [0.0] * h.k
    running = 0.0
    for rank, idx in enumerate(order, start=1):
        running = max(running, factor(p[idx], rank))
        apv[idx] = min(1.0, running)
    return AdjustedResults(hypotheses=h.hypotheses, apv=tuple(apv), method=method)


def adjust_none(h: HypothesisSet) -> AdjustedResults:
    return AdjustedResults(hypotheses=h.hypotheses, apv=tuple(h.raw_p),
                           method=Correction.NONE)


def adjust_bonferroni(h: HypothesisSet) -> AdjustedResults:
    apv = tuple(min(1.0, h.k * p) for p in h.raw_p)
    return AdjustedResults(hypotheses=h.hypotheses, apv=apv, method=Correction.BONFERRONI)


def adjust_holm(h: HypothesisSet) -> AdjustedResults:
    k = h.k
    return _stepdown(h, lambda p, j: (k + 1 - j) * p, Correction.HOLM)


def adjust_holland(h: HypothesisSet) -> AdjustedResults:
    k = h.k
    return _stepdown(h, lambda p, j: 1.0 - (1.0 - p) ** (k + 1 - j), Correction.HOLLAND)


def adjust_finner(h: HypothesisSet) -> AdjustedResults:
    k = h.k
    return _stepdown(h, lambda p, j: 1.0 - (1.0 - p) ** (k / j), Correction.FINNER)


def adjust_hochberg(h: HypothesisSet) -> AdjustedResults:
    """Step-up: running min of (k + 1 - j) * p_(j) from the largest p downward."""
    p = h.raw_p
    k = h.k
    order = _ordered_indices(p)
    apv = [0.0] * k
    running = 1.0
    for rank in range(k, 0, -1):
        idx = order[rank - 1]
        running = min(running, (k + 1 - rank) * p[idx])
        apv[idx] = min(1.0, running)
    return AdjustedResults(hypotheses=h.hypotheses, apv=tuple(apv),
                           method=Correction.HOCHBERG)


def _require_nxn(h: HypothesisSet, correction: Correction):
    if h.mode is not Mode.NXN:
        raise ModeMismatch(correction.value, h.mode.value)


def adjust_nemenyi(h: HypothesisSet) -> AdjustedResults:
    """Single-step Bonferroni over the full k = n(n-1)/2 family."""
    _require_nxn(h, Correction.NEMENYI)
    apv = tuple(min(1.0, h.k * p) for p in h.raw_p)
    return AdjustedResults(hypotheses=h.hypotheses, apv=apv, method=Correction.NEMENYI)


def _partitions(items: Tuple[int, ...]):
    """All set partitions of `items`, as lists of lists."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [part[i] + [first]] + part[i + 1:]
        yield [[first]] + part


@lru_cache(maxsize=None)
def shaffer_true_counts(n_systems: int) -> FrozenSet[int]:
    """Possible numbers of simultaneously true pairwise hypotheses among n systems.

    S(0) = S(1) = {0}; S(n) = union over j of {C(j, 2) + x : x in S(n - j)},
    where j is the size of the equality class containing one fixed system.
    """
    if n_systems < 0:
        raise ValueError("n_systems must be >= 0")
    if n_systems <= 1:
        return frozenset({0})
    out = set()
    for j in range(1, n_systems + 1):
        pairs = math.comb(j, 2)
        for x in shaffer_true_counts(n_systems - j):
            out.add(pairs + x)
    return frozenset(out)


def adjust_shaffer(h: HypothesisSet) -> AdjustedResults:
    """Holm-style step-down with t_i = max{s in S(n) : s <= k - i + 1}."""
    _require_nxn(h, Correction.SHAFFER)
    s = shaffer_true_counts(len(h.systems))
    k = h.k
    t = [max(v for v in s if v <= k - i + 1) for i in range(1, k + 1)]
    return _stepdown(h, lambda p, j: t[j - 1] * p, Correction.SHAFFER)


def _pair_index(systems: Sequence[str]) -> Dict[Tuple[str, str], int]:
    index = {}
    for i, (a, b) in enumerate(itertools.combinations(systems, 2)):
        index[(a, b)] = i
        index[(b, a)] = i
    return index


def bergmann_exhaustive_sets(
    n_systems: int, cap: int = DEFAULT_BERGMANN_CAP
) -> List[FrozenSet[int]]:
    """All index sets of hypotheses that can simultaneously be exactly true.

    Hypotheses are indexed in itertools.combinations(range(n), 2) order.  Each
    partition of the systems into equality classes yields one exhaustive set:
    the within-class pairs.  Transitivity makes these the only possibilities.
    """
    if n_systems < 2:
        raise ValueError("need at least 2 systems")
    if n_systems > cap:
        raise TooManySystems(n_systems, cap)
    pair_idx = {
        pair: i for i, pair in enumerate(itertools.combinations(range(n_systems), 2))
    }
    sets = set()
    for part in _partitions(tuple(range(n_systems))):
        members = []
        for cls in part:
            for a, b in itertools.combinations(sorted(cls), 2):
                members.append(pair_idx[(a, b)])
        sets.add(frozenset(members))
    return sorted(sets, key=lambda s: (len(s), sorted(s)))


def adjust_bergmann(h: HypothesisSet, cap: int = DEFAULT_BERGMANN_CAP) -> AdjustedResults:
    """Bergmann's dynamic procedure via the acceptance-set definition.

    A hypothesis is retained at level alpha iff some exhaustive set I
    containing it satisfies min{p_i : i in I} > alpha / |I|.  The APV of a
    hypothesis is therefore max over exhaustive I containing it of
    |I| * min{p_i : i in I}: the smallest alpha at which it leaves every
    qualifying acceptance set.
    """
    _require_nxn(h, Correction.BERGMANN)
    n = len(h.systems)
    exhaustive = bergmann_exhaustive_sets(n, cap=cap)
    # h.hypotheses pair order must map onto combinations(range(n), 2) indices
    name_pair_idx = _pair_index(h.systems)
    p_by_idx = [0.0] * h.k
    for pair, p in h.hypotheses:
        p_by_idx[name_pair_idx[pair]] = p
    apv_by_idx = [0.0] * h.k
    for ex in exhaustive:
        if not ex:
            continue
        bound = len(ex) * min(p_by_idx[i] for i in ex)
        for i in ex:
            if bound > apv_by_idx[i]:
                apv_by_idx[i] = bound
    apv = tuple(
        min(1.0, apv_by_idx[name_pair_idx[pair]]) for pair, _ in h.hypotheses
    )
    return AdjustedResults(hypotheses=h.hypotheses, apv=apv, method=Correction.BERGMANN)


def adjust(h: HypothesisSet, correction: Correction,
           bergmann_cap: int = DEFAULT_BERGMANN_CAP) -> AdjustedResults:
    """Dispatch on the configured correction method."""
    if correction is Correction.BERGMANN:
        return adjust_bergmann(h, cap=bergmann_cap)
    return {
        Correction.NONE: adjust_none,
        Correction.BONFERRONI: adjust_bonferroni,
        Correction.HOLM: adjust_holm,
        Correction.HOLLAND: adjust_holland,
        Correction.FINNER: adjust_finner,
        Correction.HOCHBERG: adjust_hochberg,
        Correction.NEMENYI: adjust_nemenyi,
        Correction.SHAFFER: adjust_shaffer,
    }[correction](h)
