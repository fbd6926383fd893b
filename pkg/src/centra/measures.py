"""The eleven normalized centralization measures.

Every measure is a total function ``Graph -> [0, 1]``. Small or edgeless
graphs fall back to a value of 0 and set ``degenerate`` on the result.
Measures built only from degrees, distances or assortativity are evaluated
in exact integer/rational arithmetic, so calibration graphs land on exactly
0 or 1.
"""

from __future__ import annotations

import enum
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

import numpy as np

from . import centrality
from .graph import Graph

__all__ = [
    "MeasureId",
    "MeasureResult",
    "MeasureRangeError",
    "MEASURES",
    "abh",
    "ecd",
    "nbc",
    "ncc",
    "ndc",
    "nde",
    "ndv",
    "ngc",
    "nhd",
    "nht",
    "nnc",
    "dv_max_terms",
    "evaluate",
    "evaluate_all",
    "value",
]

RANGE_TOL = 1e-9
# Exact rational closeness sums get expensive on very large graphs.
_EXACT_CLOSENESS_LIMIT = 5000


class MeasureId(str, enum.Enum):
    ABH = "ABH"
    ECD = "ECD"
    NBC = "NBC"
    NCC = "NCC"
    NDC = "NDC"
    NDE = "NDE"
    NDV = "NDV"
    NGC = "NGC"
    NHD = "NHD"
    NHT = "NHT"
    NNC = "NNC"


class MeasureRangeError(ArithmeticError):
    """A measure left [0, 1] by more than floating-point noise."""


@dataclass(frozen=True)
class MeasureResult:
    measure: MeasureId
    value: float
    degenerate: bool = False


def _result(measure: MeasureId, raw: float | Fraction) -> MeasureResult:
    x = float(raw)
    if not (-RANGE_TOL <= x <= 1.0 + RANGE_TOL):
        raise MeasureRangeError(f"{measure.value} evaluated to {x!r}, outside [0, 1]")
    return MeasureResult(measure, min(1.0, max(0.0, x)))


def _degenerate(measure: MeasureId) -> MeasureResult:
    return MeasureResult(measure, 0.0, degenerate=True)


def abh(g: Graph) -> MeasureResult:
    """Assortativity-based hubness, ``(1 - r) / 2``."""
    if g.n < 2 or g.m == 0:
        return _degenerate(MeasureId.ABH)
    num, den = centrality.assortativity_fraction(g)
    return _result(MeasureId.ABH, Fraction(den - num, 2 * den))


def ecd(g: Graph) -> MeasureResult:
    """Eigenvector centrality dispersion."""
    n = g.n
    if n < 2:
        return _degenerate(MeasureId.ECD)
    values = centrality.eigenvector_l2(g).values
    if len(set(values)) == 1:
        # the mean of identical floats need not equal them bit for bit
        return _result(MeasureId.ECD, 0.0)
    v = np.asarray(values)
    spread = float(np.sqrt(np.mean((v - v.mean()) ** 2)))
    return _result(MeasureId.ECD, spread / (math.sqrt(n - 1) / n))


def nbc(g: Graph) -> MeasureResult:
    n = g.n
    if n < 3:
        return _degenerate(MeasureId.NBC)
    b = centrality.betweenness_normalized(g).values
    top = max(b)
    return _result(MeasureId.NBC, math.fsum(top - x for x in b) / (n - 1))


def ncc(g: Graph) -> MeasureResult:
    n = g.n
    if n < 3:
        return _degenerate(MeasureId.NCC)
    scale = Fraction(2 * n - 3, (n - 1) * (n - 2))
    fracs = centrality.closeness_fractions(g)
    if n <= _EXACT_CLOSENESS_LIMIT:
        counts = Counter(Fraction(a, b) for a, b in fracs)
        top = max(counts)
        gap = sum((top - c) * k for c, k in counts.items())
        return _result(MeasureId.NCC, scale * gap)
    c = [a / b for a, b in fracs]
    top = max(c)
    return _result(MeasureId.NCC, float(scale) * math.fsum(top - x for x in c))


def ndc(g: Graph) -> MeasureResult:
    """Freeman degree centralization."""
    n = g.n
    if n < 3:
        return _degenerate(MeasureId.NDC)
    return _result(MeasureId.NDC, Fraction(n * max(g.degrees) - 2 * g.m, (n - 1) * (n - 2)))


def nde(g: Graph) -> MeasureResult:
    n = g.n
    if n < 2:
        return _degenerate(MeasureId.NDE)
    h = -math.fsum((k / n) * math.log(k / n) for k in Counter(g.degrees).values())
    return _result(MeasureId.NDE, h / math.log(n))


def dv_max_terms(n: int) -> tuple[Fraction, Fraction]:
    """Star and two-hub candidates for the maximal degree variance on ``n`` nodes."""
    star = Fraction((n - 1) * (n - 2) ** 2, n * n)
    two_hub = Fraction((2 * n**3 - 6 * n) - (4 * n - 6) ** 2, n * n)
    return star, two_hub


def ndv(g: Graph) -> MeasureResult:
    n = g.n
    if n < 3:
        return _degenerate(MeasureId.NDV)
    sq = sum(d * d for d in g.degrees)
    variance = Fraction(n * sq - (2 * g.m) ** 2, n * n)
    return _result(MeasureId.NDV, variance / max(dv_max_terms(n)))


def ngc(g: Graph) -> MeasureResult:
    """Gini coefficient of degrees over its one-edge-graph maximum."""
    n = g.n
    if n < 3 or g.m == 0:
        return _degenerate(MeasureId.NGC)
    # sum_{i,j} |d_i - d_j| from sorted degrees
    deg = sorted(g.degrees)
    pair_sum = 2 * sum((2 * i - n + 1) * d for i, d in enumerate(deg))
    return _result(MeasureId.NGC, Fraction(pair_sum, 4 * g.m * (n - 2)))


def nhd(g: Graph) -> MeasureResult:
    if g.n < 2 or g.m == 0:
        return _degenerate(MeasureId.NHD)
    return _result(MeasureId.NHD, Fraction(max(g.degrees), g.n - 1))


def nht(g: Graph) -> MeasureResult:
    if g.n < 2 or g.m == 0:
        return _degenerate(MeasureId.NHT)
    sq = sum(d * d for d in g.degrees)
    return _result(MeasureId.NHT, Fraction(sq, g.m * (g.m + 1)))


def _log_mean_exp(x: Iterable[float], n: int) -> float:
    x = np.asarray(list(x), dtype=float)
    top = x.max()
    return float(top + math.log(math.fsum(np.exp(x - top).tolist())) - math.log(n))


def nnc(g: Graph) -> MeasureResult:
    """Normalized natural connectivity against the complete-graph maximum."""
    n = g.n
    if g.m == 0:
        return _degenerate(MeasureId.NNC)
    spectrum = centrality.adjacency_spectrum(g).eigenvalues
    reference = [float(n - 1)] + [-1.0] * (n - 1)
    lam_max = _log_mean_exp(reference, n)
    lam_bar = _log_mean_exp(spectrum, n)
    return _result(MeasureId.NNC, (lam_max - lam_bar) / lam_max)


MEASURES: dict[MeasureId, Callable[[Graph], MeasureResult]] = {
    MeasureId.ABH: abh,
    MeasureId.ECD: ecd,
    MeasureId.NBC: nbc,
    MeasureId.NCC: ncc,
    MeasureId.NDC: ndc,
    MeasureId.NDE: nde,
    MeasureId.NDV: ndv,
    MeasureId.NGC: ngc,
    MeasureId.NHD: nhd,
    MeasureId.NHT: nht,
    MeasureId.NNC: nnc,
}


def evaluate(measure: MeasureId | str, g: Graph) -> MeasureResult:
    return MEASURES[MeasureId(measure)](g)


def value(measure: MeasureId | str, g: Graph) -> float:
    return evaluate(measure, g).value


def evaluate_all(g: Graph, measures: Iterable[MeasureId | str] | None = None) -> list[MeasureResult]:
    """Evaluate ``measures`` (all eleven by default) in the requested order."""
    ids = list(MeasureId) if measures is None else [MeasureId(m) for m in measures]
    return [MEASURES[m](g) for m in ids]
