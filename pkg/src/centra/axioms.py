"""Postulate checks for centralization measures.

Searches are exhaustive over labeled graphs up to a node bound. Each graph
is addressed by its edge bitmask, so saturating a node or relabeling a graph
is a bit operation followed by a lookup into a per-``n`` value table; every
table entry is a fresh evaluation of the measure on that graph.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

import numpy as np

from . import measures
from .graph import Graph, MAX_ENUMERATION_N, generate, graph_from_mask, saturate
from .measures import MeasureId

__all__ = [
    "AxiomId",
    "AxiomVerdict",
    "Witness",
    "TABLE_COLUMNS",
    "PUBLISHED_TABLE",
    "PUBLISHED_COUNTEREXAMPLES",
    "Counterexample",
    "check_axiom",
    "verify_published_counterexamples",
    "compliance_table",
    "satisfied_count",
    "replay",
    "value_table",
]

TOL = 1e-9
SATISFIED = "satisfied-in-scope"
VIOLATED = "violated"


class AxiomId(str, enum.Enum):
    P1a = "P1a"
    P1b = "P1b"
    P1c = "P1c"
    P2 = "P2"
    P3 = "P3"
    P4 = "P4"
    P5 = "P5"
    P6 = "P6"


TABLE_COLUMNS = ("P1", "P2", "P3", "P4", "P5", "P6")

# Published compliance matrix, columns as TABLE_COLUMNS.
PUBLISHED_TABLE: dict[MeasureId, tuple[bool, ...]] = {
    MeasureId.ABH: (True, True, True, False, False, False),
    MeasureId.ECD: (True, False, True, False, False, False),
    MeasureId.NBC: (True, True, True, True, True, False),
    MeasureId.NCC: (True, True, True, True, True, False),
    MeasureId.NDC: (True, True, True, True, True, False),
    MeasureId.NDE: (True, False, True, True, False, False),
    MeasureId.NDV: (True, False, True, True, False, False),
    MeasureId.NGC: (True, False, True, False, False, False),
    MeasureId.NHD: (False, True, True, True, True, True),
    MeasureId.NHT: (False, True, True, True, False, False),
    MeasureId.NNC: (True, False, True, True, True, False),
}


@dataclass(frozen=True)
class Witness:
    graph: Graph
    node: int | None
    before: float
    after: float | None = None

    def edge_list(self) -> list[tuple[int, int]]:
        return list(self.graph.sorted_edges)


@dataclass(frozen=True)
class AxiomVerdict:
    measure: MeasureId
    axiom: str
    status: str
    scope: str
    witness: Witness | None = None
    note: str = ""

    @property
    def satisfied(self) -> bool:
        return self.status == SATISFIED


def _pairs(n: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(n), 2))


@lru_cache(maxsize=None)
def _incidence_masks(n: int) -> tuple[int, ...]:
    out = [0] * n
    for i, (u, v) in enumerate(_pairs(n)):
        out[u] |= 1 << i
        out[v] |= 1 << i
    return tuple(out)


@lru_cache(maxsize=None)
def value_table(measure: MeasureId, n: int) -> np.ndarray:
    """Measure value for every labeled graph on ``n`` nodes, indexed by edge mask."""
    measure = MeasureId(measure)
    size = 1 << (n * (n - 1) // 2)
    fn = measures.MEASURES[measure]
    return np.array([fn(graph_from_mask(n, mask)).value for mask in range(size)])


def _permute_mask(n: int, mask: int, p: list[int]) -> int:
    index = {pair: i for i, pair in enumerate(_pairs(n))}
    out = 0
    for i, (u, v) in enumerate(_pairs(n)):
        if mask >> i & 1:
            a, b = p[u], p[v]
            out |= 1 << index[(a, b) if a < b else (b, a)]
    return out


def _complete(n: int) -> Graph:
    return generate("complete", n)


def _violation(measure: MeasureId, axiom: AxiomId, scope: str, witness: Witness, note: str = "") -> AxiomVerdict:
    return AxiomVerdict(measure, axiom.value, VIOLATED, scope, witness, note)


def _check_family(measure, axiom, graphs, target, scope):
    fn = measures.MEASURES[measure]
    for g in graphs:
        v = fn(g).value
        if abs(v - target) > TOL:
            return _violation(measure, axiom, scope, Witness(g, None, v))
    return AxiomVerdict(measure, axiom.value, SATISFIED, scope)


def check_axiom(
    measure: MeasureId | str,
    axiom: AxiomId | str,
    max_n: int = 6,
    perms: int = 20,
    seed: int = 42,
    family_max_n: int = 20,
) -> AxiomVerdict:
    """Search for a violation of one postulate by one measure.

    P1a-P2 are checked on their single-graph-per-``n`` families up to
    ``family_max_n``; P3-P6 enumerate all labeled graphs up to ``max_n``
    (P3 up to ``min(max_n, 5)`` with ``perms`` random relabelings each).
    The first violation in enumeration order becomes the witness.
    """
    measure = MeasureId(measure)
    axiom = AxiomId(axiom)
    if not 3 <= max_n <= MAX_ENUMERATION_N:
        raise ValueError(f"max_n must be in [3, {MAX_ENUMERATION_N}], got {max_n}")

    if axiom is AxiomId.P1a:
        return _check_family(measure, axiom, [Graph(1)], 0.0, "n=1")
    if axiom is AxiomId.P1b:
        graphs = (_complete(n) for n in range(3, family_max_n + 1))
        return _check_family(measure, axiom, graphs, 0.0, f"K_n, 3<=n<={family_max_n}")
    if axiom is AxiomId.P1c:
        graphs = (Graph(n) for n in range(1, family_max_n + 1))
        return _check_family(measure, axiom, graphs, 0.0, f"empty graphs, 1<=n<={family_max_n}")
    if axiom is AxiomId.P2:
        graphs = (generate("star", n) for n in range(3, family_max_n + 1))
        return _check_family(measure, axiom, graphs, 1.0, f"S_n, 3<=n<={family_max_n}")
    if axiom is AxiomId.P3:
        return _check_isomorphism(measure, min(max_n, 5), perms, seed)
    return _check_saturation(measure, axiom, max_n)


def _check_isomorphism(measure: MeasureId, max_n: int, perms: int, seed: int) -> AxiomVerdict:
    rng = random.Random(seed)
    scope = f"all labeled graphs n<={max_n}, {perms} random relabelings each (seed {seed})"
    for n in range(1, max_n + 1):
        table = value_table(measure, n)
        for mask in range(len(table)):
            for _ in range(perms):
                p = list(range(n))
                rng.shuffle(p)
                other = table[_permute_mask(n, mask, p)]
                if abs(other - table[mask]) > TOL:
                    g = graph_from_mask(n, mask)
                    return _violation(
                        measure, AxiomId.P3, scope, Witness(g, None, float(table[mask]), float(other)),
                        note=f"relabeling {p}",
                    )
    return AxiomVerdict(measure, AxiomId.P3.value, SATISFIED, scope)


def _check_saturation(measure: MeasureId, axiom: AxiomId, max_n: int) -> AxiomVerdict:
    scope = f"all labeled graphs 1<=n<={max_n}"
    for n in range(1, max_n + 1):
        table = value_table(measure, n)
        inc = _incidence_masks(n)
        for mask in range(len(table)):
            saturated = [(mask & inc[v]) == inc[v] for v in range(n)]
            before = float(table[mask])
            if axiom is AxiomId.P4:
                if not any(saturated) and before >= 1.0 - TOL:
                    return _violation(measure, axiom, scope, Witness(graph_from_mask(n, mask), None, before))
            elif axiom is AxiomId.P5:
                if not (any(saturated) and not all(saturated)):
                    continue
                for v in range(n):
                    if saturated[v]:
                        continue
                    after = float(table[mask | inc[v]])
                    if after > before + TOL:
                        return _violation(measure, axiom, scope, Witness(graph_from_mask(n, mask), v, before, after))
            elif axiom is AxiomId.P6:
                if any(saturated):
                    continue
                for v in range(n):
                    after = float(table[mask | inc[v]])
                    if after < before - TOL:
                        return _violation(measure, axiom, scope, Witness(graph_from_mask(n, mask), v, before, after))
    return AxiomVerdict(measure, axiom.value, SATISFIED, scope)


def replay(verdict: AxiomVerdict) -> bool:
    """Re-evaluate a violation witness from scratch; True if it still violates."""
    if verdict.witness is None:
        return False
    w = verdict.witness
    fn = measures.MEASURES[verdict.measure]
    before = fn(w.graph).value
    axiom = AxiomId(verdict.axiom)
    if axiom in (AxiomId.P1a, AxiomId.P1b, AxiomId.P1c):
        return abs(before) > TOL
    if axiom is AxiomId.P2:
        return abs(before - 1.0) > TOL
    if axiom is AxiomId.P3:
        return w.after is not None and abs(w.after - before) > TOL
    if axiom is AxiomId.P4:
        return min(w.graph.degrees, default=0) >= 0 and w.graph.n - 1 not in w.graph.degrees and before >= 1.0 - TOL
    after = fn(saturate(w.graph, w.node)).value
    if axiom is AxiomId.P5:
        return after > before + TOL
    return after < before - TOL


@dataclass(frozen=True)
class Counterexample:
    measure: MeasureId
    axiom: AxiomId
    graph: Graph
    node: int | None = None
    expected: tuple[float, ...] = field(default=())


def _g(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    return Graph.from_pairs(n, edges)


def _ngc_p5_witness() -> tuple[Graph, int] | None:
    """First 5-node graph with degrees {3,3,3,3,4} on which saturation raises NGC."""
    inc = _incidence_masks(5)
    for mask in range(1 << 10):
        g = graph_from_mask(5, mask)
        if sorted(g.degrees) != [3, 3, 3, 3, 4]:
            continue
        before = measures.ngc(g).value
        for v in range(5):
            if (mask & inc[v]) == inc[v]:
                continue
            if measures.ngc(graph_from_mask(5, mask | inc[v])).value > before + TOL:
                return g, v
    return None


def _star_plus_edge(n: int) -> Graph:
    return _g(n, [(0, i) for i in range(1, n)] + [(1, 2)])


def _published_counterexamples() -> list[Counterexample]:
    M, A = MeasureId, AxiomId
    one_edge5 = _g(5, [(0, 1)])
    nbc_ndc = _g(6, [(0, 1), (0, 3), (0, 4), (0, 5), (1, 2)])
    out = [
        Counterexample(M.ABH, A.P4, _g(4, [(0, 1), (0, 2)]), expected=(1.0,)),
        Counterexample(M.ABH, A.P5, _g(5, [(0, 1), (0, 2), (0, 3), (0, 4), (2, 3), (3, 4)])),
        Counterexample(M.ABH, A.P6, _g(5, [(0, 1), (0, 2)])),
        Counterexample(M.ECD, A.P5, _g(5, [(0, 3), (0, 4), (0, 2), (1, 3), (1, 2), (1, 4), (2, 3), (3, 4)])),
        Counterexample(M.ECD, A.P6, _g(5, [(0, 1), (1, 2), (2, 3)])),
        Counterexample(M.NBC, A.P6, nbc_ndc, node=3, expected=(0.82, 0.36)),
        Counterexample(M.NDC, A.P6, nbc_ndc, node=3, expected=(0.7, 0.6)),
        Counterexample(M.NCC, A.P6, _g(5, [(0, 1), (0, 2), (0, 3)])),
        Counterexample(M.NDE, A.P5, _g(5, [(0, 3), (0, 2), (1, 3), (1, 4), (2, 3), (3, 4)])),
        Counterexample(M.NDE, A.P6, one_edge5),
        Counterexample(M.NGC, A.P6, one_edge5),
        Counterexample(M.NHT, A.P6, one_edge5),
        Counterexample(M.NDV, A.P5, _star_plus_edge(7)),
        Counterexample(M.NDV, A.P6, _g(5, [(0, 1), (0, 2), (1, 3), (1, 4)])),
        Counterexample(M.NHT, A.P5, _g(5, [(0, 1), (0, 3), (0, 2), (1, 2), (1, 3), (1, 4), (2, 4), (3, 4)])),
    ]
    found = _ngc_p5_witness()
    if found is not None:
        out.append(Counterexample(M.NGC, A.P5, found[0], node=found[1]))
    else:
        out.append(Counterexample(M.NGC, A.P5, _g(5, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4), (4, 1)])))
    return out


PUBLISHED_COUNTEREXAMPLES = _published_counterexamples()


def _verify_counterexample(cx: Counterexample) -> AxiomVerdict:
    fn = measures.MEASURES[cx.measure]
    g = cx.graph
    before = fn(g).value
    scope = "published counterexample"
    saturated = [d == g.n - 1 for d in g.degrees]
    if cx.axiom is AxiomId.P4:
        if not any(saturated) and before >= 1.0 - TOL:
            return _violation(cx.measure, cx.axiom, scope, Witness(g, None, before))
        return AxiomVerdict(cx.measure, cx.axiom.value, SATISFIED, scope, note="discrepancy: no violation")

    if cx.axiom is AxiomId.P5 and not (any(saturated) and not all(saturated)):
        return AxiomVerdict(cx.measure, cx.axiom.value, SATISFIED, scope, note="discrepancy: premise fails")
    if cx.axiom is AxiomId.P6 and any(saturated):
        return AxiomVerdict(cx.measure, cx.axiom.value, SATISFIED, scope, note="discrepancy: premise fails")
    nodes = [cx.node] if cx.node is not None else [v for v in range(g.n) if not saturated[v]]
    for v in nodes:
        after = fn(saturate(g, v)).value
        worse = after > before + TOL if cx.axiom is AxiomId.P5 else after < before - TOL
        if worse:
            return _violation(cx.measure, cx.axiom, scope, Witness(g, v, before, after))
    return AxiomVerdict(cx.measure, cx.axiom.value, SATISFIED, scope, note="discrepancy: no violation")


def verify_published_counterexamples() -> list[AxiomVerdict]:
    """Re-evaluate every published witness; non-violations carry a discrepancy note."""
    return [_verify_counterexample(cx) for cx in PUBLISHED_COUNTEREXAMPLES]


def _merge_p1(measure: MeasureId, parts: list[AxiomVerdict]) -> AxiomVerdict:
    for part in parts:
        if not part.satisfied:
            return AxiomVerdict(measure, "P1", VIOLATED, part.scope, part.witness, note=part.axiom)
    return AxiomVerdict(measure, "P1", SATISFIED, "; ".join(p.scope for p in parts))


def compliance_table(
    max_n: int = 6,
    perms: int = 20,
    seed: int = 42,
    family_max_n: int = 20,
    include_published_counterexamples: bool = True,
    measure_ids: Iterable[MeasureId | str] | None = None,
) -> dict[MeasureId, dict[str, AxiomVerdict]]:
    """Measures x {P1..P6} verdict matrix; P1 is the conjunction of P1a-P1c."""
    ids = list(MeasureId) if measure_ids is None else [MeasureId(m) for m in measure_ids]
    published: dict[tuple[MeasureId, str], AxiomVerdict] = {}
    if include_published_counterexamples:
        for v in verify_published_counterexamples():
            if not v.satisfied:
                published.setdefault((v.measure, v.axiom), v)
    table: dict[MeasureId, dict[str, AxiomVerdict]] = {}
    for m in ids:
        row: dict[str, AxiomVerdict] = {}
        row["P1"] = _merge_p1(
            m, [check_axiom(m, a, max_n, perms, seed, family_max_n) for a in ("P1a", "P1b", "P1c")]
        )
        for a in TABLE_COLUMNS[1:]:
            verdict = check_axiom(m, a, max_n, perms, seed, family_max_n)
            if verdict.satisfied and (m, a) in published:
                verdict = published[(m, a)]
            row[a] = verdict
        table[m] = row
    return table


def satisfied_count(row: dict[str, AxiomVerdict]) -> int:
    return sum(row[c].satisfied for c in TABLE_COLUMNS)
