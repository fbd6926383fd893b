"""Canonical-topology sweeps, behavior classification and the overall score."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import measures
from .graph import Topology, generate
from .measures import MeasureId

__all__ = [
    "SweepSeries",
    "BehaviorVerdict",
    "RuleParams",
    "ScoreRow",
    "DEFAULT_N_VALUES",
    "TOPOLOGY_ORDER",
    "LIMITS",
    "PUBLISHED_NUMERICAL_TABLE",
    "sweep",
    "classify_behavior",
    "numerical_table",
    "total_score",
    "score_table",
]

DEFAULT_N_VALUES: tuple[int, ...] = tuple(range(5, 101, 5))

TOPOLOGY_ORDER = (
    Topology.STAR,
    Topology.RING,
    Topology.COMPLETE,
    Topology.STAR_PERTURBED,
    Topology.RING_PERTURBED,
    Topology.COMPLETE_PERTURBED,
)

# value each topology should take (unperturbed) or approach (perturbed)
LIMITS: dict[Topology, float] = {
    Topology.STAR: 1.0,
    Topology.RING: 0.0,
    Topology.COMPLETE: 0.0,
    Topology.STAR_PERTURBED: 1.0,
    Topology.RING_PERTURBED: 0.0,
    Topology.COMPLETE_PERTURBED: 0.0,
}

# Published pass matrix, columns as TOPOLOGY_ORDER.
PUBLISHED_NUMERICAL_TABLE: dict[MeasureId, tuple[bool, ...]] = {
    MeasureId.ABH: (True, True, True, True, False, False),
    MeasureId.ECD: (False, True, True, False, False, True),
    MeasureId.NBC: (True, True, True, True, True, True),
    MeasureId.NCC: (True, True, True, True, True, True),
    MeasureId.NDC: (True, True, True, True, True, True),
    MeasureId.NDE: (False, True, True, False, True, True),
    MeasureId.NDV: (False, True, True, False, True, True),
    MeasureId.NGC: (False, True, True, False, True, True),
    MeasureId.NHD: (True, False, False, True, True, False),
    MeasureId.NHT: (True, False, False, True, True, True),
    MeasureId.NNC: (False, False, True, True, False, True),
}


@dataclass(frozen=True)
class SweepSeries:
    measure: MeasureId
    topology: Topology
    points: tuple[tuple[int, float], ...]

    @property
    def n_values(self) -> list[int]:
        return [n for n, _ in self.points]

    @property
    def values(self) -> list[float]:
        return [v for _, v in self.points]


@dataclass(frozen=True)
class RuleParams:
    """Knobs of the pass/fail rules.

    ``exact_tol`` bounds deviation from the boundary value on unperturbed
    topologies. Perturbed series pass when their distance to the limit never
    grows from ``n_trend`` on (up to ``trend_tol``) and has at least shrunk by
    ``shrink_factor`` between the first sampled ``n >= n_trend`` and the
    largest ``n``. Series whose distance stays below ``gap_floor_exempt`` pass
    outright.
    """

    exact_tol: float = 1e-9
    n_trend: int = 10
    shrink_factor: float = 0.5
    gap_floor_exempt: float = 1e-3
    trend_tol: float = 1e-12
    min_points: int = 5


@dataclass(frozen=True)
class BehaviorVerdict:
    measure: MeasureId
    topology: Topology
    passed: bool
    rule_applied: str
    details: dict = field(default_factory=dict)


@dataclass(frozen=True)
class ScoreRow:
    measure: MeasureId
    S_A: int
    S_N: int
    w_A: float
    w_N: float
    total: float


def sweep(
    measure_ids: Iterable[MeasureId | str] | None = None,
    topologies: Iterable[Topology | str] | None = None,
    n_values: Sequence[int] = DEFAULT_N_VALUES,
    seed: int = 42,
) -> list[SweepSeries]:
    """Evaluate every (measure, topology, n) combination; one series per pair."""
    ids = list(MeasureId) if measure_ids is None else [MeasureId(m) for m in measure_ids]
    tops = list(TOPOLOGY_ORDER) if topologies is None else [Topology(t) for t in topologies]
    n_values = list(n_values)
    if any(b <= a for a, b in zip(n_values, n_values[1:])):
        raise ValueError("n_values must be strictly increasing")
    out = []
    for top in tops:
        if n_values and n_values[0] < top.min_n:
            raise ValueError(f"{top.value} needs n >= {top.min_n}, got {n_values[0]}")
        graphs = [(n, generate(top, n, seed)) for n in n_values]
        for m in ids:
            fn = measures.MEASURES[m]
            out.append(SweepSeries(m, top, tuple((n, fn(g).value) for n, g in graphs)))
    return out


def classify_behavior(series: SweepSeries, params: RuleParams = RuleParams()) -> BehaviorVerdict:
    ns, vals = series.n_values, series.values
    if len(ns) < params.min_points:
        raise ValueError(f"need at least {params.min_points} points, got {len(ns)}")
    limit = LIMITS[series.topology]
    gaps = [abs(v - limit) for v in vals]

    if not series.topology.perturbed:
        worst = max(gaps)
        return BehaviorVerdict(
            series.measure, series.topology, worst <= params.exact_tol, "exact-boundary",
            {"limit": limit, "max_gap": worst},
        )

    tail = [(n, gap) for n, gap in zip(ns, gaps) if n >= params.n_trend]
    if len(tail) < 2:
        raise ValueError(f"need at least two points with n >= {params.n_trend}")
    tail_gaps = [gap for _, gap in tail]
    n_ref, gap_ref = tail[0]
    gap_end = tail_gaps[-1]
    details = {
        "limit": limit,
        "n_ref": n_ref,
        "gap_ref": gap_ref,
        "n_max": ns[-1],
        "gap_max_n": gap_end,
        "max_tail_gap": max(tail_gaps),
    }
    if max(tail_gaps) < params.gap_floor_exempt:
        return BehaviorVerdict(series.measure, series.topology, True, "converging-limit", details | {"exempt": True})
    monotone = all(b <= a + params.trend_tol for a, b in zip(tail_gaps, tail_gaps[1:]))
    shrinks = gap_end <= params.shrink_factor * gap_ref
    details |= {"non_increasing": monotone, "shrinks": shrinks, "exempt": False}
    return BehaviorVerdict(series.measure, series.topology, monotone and shrinks, "converging-limit", details)


def numerical_table(
    verdicts: Iterable[BehaviorVerdict], topologies: Sequence[Topology] = TOPOLOGY_ORDER
) -> dict[MeasureId, dict[Topology, BehaviorVerdict]]:
    """Arrange verdicts by measure and topology; every cell must be present."""
    table: dict[MeasureId, dict[Topology, BehaviorVerdict]] = {}
    for v in verdicts:
        table.setdefault(v.measure, {})[v.topology] = v
    for m, row in table.items():
        missing = [t.value for t in topologies if t not in row]
        if missing:
            raise ValueError(f"{m.value}: no verdict for {', '.join(missing)}")
    return table


def passed_count(row: dict[Topology, BehaviorVerdict]) -> int:
    return sum(v.passed for v in row.values())


def total_score(S_A: int, S_N: int, w_A: float = 0.5, w_N: float = 0.5) -> float:
    if w_A < 0 or w_N < 0 or not math.isclose(w_A + w_N, 1.0, abs_tol=1e-12):
        raise ValueError(f"weights must be nonnegative and sum to 1, got {w_A} + {w_N}")
    if not (0 <= S_A <= 6 and 0 <= S_N <= 6):
        raise ValueError("scores must lie in 0..6")
    return w_A * S_A + w_N * S_N


def score_table(
    axiomatic: dict[MeasureId, int],
    numerical: dict[MeasureId, int],
    w_A: float = 0.5,
    w_N: float = 0.5,
) -> list[ScoreRow]:
    return [
        ScoreRow(m, axiomatic[m], numerical[m], w_A, w_N, total_score(axiomatic[m], numerical[m], w_A, w_N))
        for m in MeasureId
        if m in axiomatic and m in numerical
    ]
