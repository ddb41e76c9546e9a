"""Significance digraph construction, DOT output, and rank-group derivation."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .contingency import DiscordantMatrix
from .fwer import AdjustedResults, HypothesisSet, adjust
from .mcnemar import run_test
from .model import ComparisonConfig, Mode

NO_EVIDENCE_NOTE = "no discordant correspondences; systems indistinguishable"


@dataclass(frozen=True)
class PairOutcome:
    """Result of one pairwise comparison, systems in lexicographic order."""

    system_a: str
    system_b: str
    n_a: int
    n_b: int
    raw_p: float
    apv: float
    significant: bool
    winner: Optional[str]
    small_sample: bool = False
    note: Optional[str] = None


@dataclass(frozen=True)
class Edge:
    winner: str
    loser: str
    apv: float
    raw_p: float
    n_winner: int
    n_loser: int


@dataclass(frozen=True)
class SignificanceGraph:
    nodes: Tuple[str, ...]
    edges: Tuple[Edge, ...]

    def has_edge_between(self, a: str, b: str) -> bool:
        return any(
            {e.winner, e.loser} == {a, b} for e in self.edges
        )

    def wins(self, name: str) -> int:
        return sum(1 for e in self.edges if e.winner == name)


@dataclass(frozen=True)
class RankTable:
    """Ordered groups of mutually non-significant systems, best first."""

    groups: Tuple[Tuple[str, ...], ...]


def _pairs_for_mode(systems: Tuple[str, ...], cfg: ComparisonConfig):
    if cfg.mode is Mode.NX1:
        if cfg.baseline not in systems:
            raise ValueError(f"baseline {cfg.baseline!r} not among systems")
        others = [s for s in systems if s != cfg.baseline]
        return [tuple(sorted((cfg.baseline, o))) for o in sorted(others)]
    return list(itertools.combinations(sorted(systems), 2))


def pairwise_outcomes(m: DiscordantMatrix, cfg: ComparisonConfig) -> List[PairOutcome]:
    """Run the configured test on every relevant pair and adjust p-values jointly.

    Pairs with both discordant counts zero carry no evidence; they enter the
    hypothesis family with p = 1 so the family size stays at its nominal k,
    but can never produce an edge.
    """
    systems = m.systems
    pairs = _pairs_for_mode(systems, cfg)
    raw = []
    for a, b in pairs:
        n_a, n_b = m.pair_counts(m.index(a), m.index(b))
        if n_a == 0 and n_b == 0:
            raw.append((a, b, n_a, n_b, 1.0, False, NO_EVIDENCE_NOTE))
        else:
            result = run_test(cfg.test, n_a, n_b)
            raw.append((a, b, n_a, n_b, result.p_value, result.small_sample, None))
    hyp = HypothesisSet(
        systems=tuple(sorted(systems)),
        hypotheses=tuple(((a, b), p) for a, b, _, _, p, _, _ in raw),
        mode=cfg.mode,
    )
    adjusted = adjust(hyp, cfg.correction, bergmann_cap=cfg.bergmann_cap)
    outcomes = []
    for (a, b, n_a, n_b, p, small, note), apv in zip(raw, adjusted.apv):
        significant = apv < cfg.alpha and n_a != n_b and note is None
        winner = None
        if significant:
            winner = a if n_a > n_b else b
        outcomes.append(
            PairOutcome(
                system_a=a, system_b=b, n_a=n_a, n_b=n_b,
                raw_p=p, apv=apv, significant=significant, winner=winner,
                small_sample=small, note=note,
            )
        )
    return outcomes


def build_graph(m: DiscordantMatrix, cfg: ComparisonConfig) -> SignificanceGraph:
    """Directed graph with an edge winner -> loser for each rejected pair."""
    outcomes = pairwise_outcomes(m, cfg)
    edges = []
    for o in outcomes:
        if not o.significant:
            continue
        loser = o.system_b if o.winner == o.system_a else o.system_a
        n_w, n_l = (o.n_a, o.n_b) if o.winner == o.system_a else (o.n_b, o.n_a)
        edges.append(
            Edge(winner=o.winner, loser=loser, apv=o.apv, raw_p=o.raw_p,
                 n_winner=n_w, n_loser=n_l)
        )
    edges.sort(key=lambda e: (e.winner, e.loser))
    return SignificanceGraph(nodes=tuple(sorted(m.systems)), edges=tuple(edges))


def emit_dot(g: SignificanceGraph) -> bytes:
    """Deterministic DOT rendering; byte-stable for golden-file comparison."""
    lines = ["digraph significance {"]
    for name in sorted(g.nodes):
        lines.append(f'  "{name}";')
    for e in sorted(g.edges, key=lambda e: (e.winner, e.loser)):
        lines.append(f'  "{e.winner}" -> "{e.loser}" [label="{e.apv:.6f}"];')
    lines.append("}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def rank_systems(g: SignificanceGraph) -> RankTable:
    """Group systems by win count and mutual non-significance.

    Systems are ordered by descending number of outgoing edges; adjacent
    systems with equal win counts and no edge between them share a group.
    This reproduces the published ranking layout but is a heuristic, not a
    procedure taken from elsewhere.
    """
    order = sorted(g.nodes, key=lambda n: (-g.wins(n), n))
    groups: List[List[str]] = []
    for name in order:
        if groups:
            current = groups[-1]
            same_wins = g.wins(current[0]) == g.wins(name)
            clean = all(not g.has_edge_between(name, other) for other in current)
            if same_wins and clean:
                current.append(name)
                continue
        groups.append([name])
    return RankTable(
        groups=tuple(tuple(sorted(grp, key=str.casefold)) for grp in groups)
    )


def build_report(m: DiscordantMatrix, cfg: ComparisonConfig) -> dict:
    """Full comparison report: config echo, per-pair records, graph, ranking."""
    outcomes = pairwise_outcomes(m, cfg)
    graph = build_graph(m, cfg)
    ranks = rank_systems(graph)
    warnings = sorted(
        f"small discordant sample for ({o.system_a}, {o.system_b}): "
        f"{o.n_a + o.n_b} < 25"
        for o in outcomes
        if o.small_sample
    )
    pair_records = []
    for o in sorted(outcomes, key=lambda o: (o.system_a, o.system_b)):
        record = {
            "systems": [o.system_a, o.system_b],
            "n_i": o.n_a,
            "n_j": o.n_b,
            "test": cfg.test.value,
            "raw_p": o.raw_p,
            "apv": o.apv,
            "significant": o.significant,
            "winner": o.winner,
        }
        if o.note:
            record["note"] = o.note
        pair_records.append(record)
    return {
        "config": {
            "perspective": cfg.perspective.value,
            "test": cfg.test.value,
            "correction": cfg.correction.value,
            "mode": cfg.mode.value,
            "baseline": cfg.baseline,
            "alpha": cfg.alpha,
        },
        "pairs": pair_records,
        "graph": {
            "nodes": list(graph.nodes),
            "edges": [
                {
                    "winner": e.winner,
                    "loser": e.loser,
                    "apv": e.apv,
                    "raw_p": e.raw_p,
                    "n_winner": e.n_winner,
                    "n_loser": e.n_loser,
                }
                for e in graph.edges
            ],
        },
        "ranking": [list(grp) for grp in ranks.groups],
        "ranking_note": "win count + mutual non-significance heuristic",
        "warnings": warnings,
    }


def serialize_report(report: dict) -> bytes:
    return (json.dumps(report, sort_keys=True, indent=2) + "\n").encode("utf-8")
