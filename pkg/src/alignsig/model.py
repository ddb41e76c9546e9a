"""Core domain types: correspondences, alignments, contingency tables, config."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Optional

from .errors import (
    EmptySystemName,
    ModeMismatch,
    NonEquivalenceRelation,
)

EQUIVALENCE = "="


class Perspective(Enum):
    IFP = "ifp"  # ignore false positives (recall-like)
    CFP = "cfp"  # consider relative false positives (F-measure-like)


class TestKind(Enum):
    ASYMPTOTIC = "asymptotic"
    EXACT = "exact"
    CC = "cc"
    MIDP = "midp"


class Correction(Enum):
    NONE = "none"
    BONFERRONI = "bonferroni"
    HOLM = "holm"
    HOLLAND = "holland"
    FINNER = "finner"
    HOCHBERG = "hochberg"
    NEMENYI = "nemenyi"
    SHAFFER = "shaffer"
    BERGMANN = "bergmann"


class Mode(Enum):
    NXN = "nxn"
    NX1 = "nx1"


#: Corrections that exploit logical relations between all pairwise hypotheses
#: and therefore only make sense when every pair is compared.
NXN_ONLY_CORRECTIONS = frozenset(
    {Correction.NEMENYI, Correction.SHAFFER, Correction.BERGMANN}
)


@dataclass(frozen=True)
class Correspondence:
    """A single mapping between a source and a target entity.

    Identity is (source, target, relation); confidence does not participate,
    so identical pairs with differing confidence never double-count.
    """

    source: str
    target: str
    relation: str = EQUIVALENCE
    confidence: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "source", self.source.strip())
        object.__setattr__(self, "target", self.target.strip())
        if not self.source or not self.target:
            raise ValueError("source and target must be non-empty after trimming")
        if not 0.0 <= self.confidence <= 1.0:
            raise ValueError(f"confidence {self.confidence} outside [0, 1]")

    @property
    def key(self) -> tuple:
        return (self.source, self.target, self.relation)


@dataclass(frozen=True)
class Alignment:
    """A deduplicated, deterministically ordered set of correspondences."""

    system_name: str
    correspondences: tuple = ()

    def __len__(self) -> int:
        return len(self.correspondences)

    def __iter__(self) -> Iterator[Correspondence]:
        return iter(self.correspondences)

    def key_set(self) -> frozenset:
        return frozenset(c.key for c in self.correspondences)


def canonicalize_alignment(raw: Iterable[Correspondence], system_name: str) -> Alignment:
    """Collapse duplicates (keeping max confidence) and fix iteration order.

    Only equivalence correspondences are accepted.  The result is sorted
    lexicographically by (source, target) so downstream output is stable.
    """
    if not system_name or not system_name.strip():
        raise EmptySystemName("system name must be non-empty")
    best: dict = {}
    for c in raw:
        if c.relation != EQUIVALENCE:
            raise NonEquivalenceRelation(c.source, c.target, c.relation)
        prev = best.get(c.key)
        if prev is None or c.confidence > prev.confidence:
            best[c.key] = c
    ordered = tuple(sorted(best.values(), key=lambda c: (c.source, c.target)))
    return Alignment(system_name=system_name.strip(), correspondences=ordered)


@dataclass(frozen=True)
class TaskUniverse:
    """Total number of candidate correspondences T = n * m, when known."""

    total_pairs: Optional[int] = None

    def __post_init__(self):
        if self.total_pairs is not None and self.total_pairs <= 0:
            raise ValueError("total_pairs must be positive when given")


@dataclass(frozen=True)
class ContingencyTable:
    """The 2x2 McNemar table; n11 may be unknown under the CFP perspective."""

    n00: int
    n01: int
    n10: int
    n11: Optional[int]
    perspective: Perspective

    def __post_init__(self):
        for name in ("n00", "n01", "n10"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")
        if self.n11 is not None and self.n11 < 0:
            raise ValueError("n11 must be >= 0 when present")

    @property
    def discordant(self) -> tuple:
        return (self.n01, self.n10)


@dataclass(frozen=True)
class ComparisonConfig:
    """Everything needed to turn a discordant matrix into a verdict graph."""

    perspective: Perspective = Perspective.IFP
    test: TestKind = TestKind.MIDP
    correction: Correction = Correction.BERGMANN
    mode: Mode = Mode.NXN
    baseline: Optional[str] = None
    alpha: float = 0.05
    bergmann_cap: int = 9

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha {self.alpha} outside (0, 1)")
        if self.mode is Mode.NX1 and self.correction in NXN_ONLY_CORRECTIONS:
            raise ModeMismatch(self.correction.value, self.mode.value)
        if self.mode is Mode.NX1 and not self.baseline:
            raise ValueError("NX1 mode requires a baseline system name")
