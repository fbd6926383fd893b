"""Node-level centralities and adjacency spectra consumed by the measures."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Literal

import numba
import numpy as np

from .graph import Graph, GraphError

__all__ = [
    "CentralityVector",
    "Spectrum",
    "degree_sequence",
    "betweenness_raw",
    "betweenness_normalized",
    "closeness_normalized",
    "closeness_fractions",
    "eigenvector_l2",
    "adjacency_spectrum",
    "degree_assortativity",
    "assortativity_fraction",
]

# Fixed source partition; accumulation order never depends on thread count.
_SOURCE_BLOCKS = 64
# Dense eigensolver above this size would need O(n^2) memory.
DENSE_EIGEN_LIMIT = 6000
_EIGEN_TIE_TOL = 1e-8
_INTEGER_SNAP_TOL = 1e-10


@dataclass(frozen=True)
class CentralityVector:
    values: tuple[float, ...]
    kind: Literal["degree", "betweenness", "closeness", "eigenvector"]

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> float:
        return self.values[i]


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: tuple[float, ...]  # descending


def degree_sequence(g: Graph) -> list[int]:
    return list(g.degrees)


@numba.njit(cache=True, parallel=True)
def _path_kernel(indptr, indices, n, nblocks):
    """Brandes dependencies plus BFS distance sums from every source.

    Returns ``(dependency, dist_sum, reach)``; ``dependency`` counts each
    unordered pair twice. Sources are split into ``nblocks`` strided blocks
    whose partial sums are added in block order.

    Each BFS layer is expanded top-down from the frontier or bottom-up from
    the unvisited nodes, whichever touches fewer arcs. Shortest-path DAG arcs
    are recorded per layer so the dependency pass only walks the DAG.
    """
    arcs = indices.shape[0]
    partial = np.zeros((nblocks, n))
    dist_sum = np.zeros(n, dtype=np.int64)
    reach = np.zeros(n, dtype=np.int64)
    for b in numba.prange(nblocks):
        dist = np.empty(n, dtype=np.int32)
        sigma = np.empty(n)
        delta = np.empty(n)
        order = np.empty(n, dtype=np.int32)
        seg = np.empty(n + 1, dtype=np.int64)
        parent = np.empty(arcs + 1, dtype=np.int32)
        child = np.empty(arcs + 1, dtype=np.int32)
        acc = partial[b]
        for s in range(b, n, nblocks):
            dist[:] = -1
            sigma[:] = 0.0
            dist[s] = 0
            sigma[s] = 1.0
            order[0] = s
            lo, hi, tail = 0, 1, 1
            level = 0
            cnt = 0
            total = 0
            seen_arcs = indptr[s + 1] - indptr[s]
            while lo < hi:
                seg[level] = cnt
                nd = level + 1
                frontier_arcs = 0
                for j in range(lo, hi):
                    v = order[j]
                    frontier_arcs += indptr[v + 1] - indptr[v]
                if frontier_arcs <= arcs - seen_arcs:
                    for j in range(lo, hi):
                        v = order[j]
                        sv = sigma[v]
                        for k in range(indptr[v], indptr[v + 1]):
                            w = indices[k]
                            if dist[w] < 0:
                                dist[w] = nd
                                order[tail] = w
                                tail += 1
                            # branch-free: the comparison is unpredictable
                            down = dist[w] == nd
                            sigma[w] += sv * down
                            parent[cnt] = v
                            child[cnt] = w
                            cnt += down
                else:
                    for u in range(n):
                        if dist[u] >= 0:
                            continue
                        su = 0.0
                        for k in range(indptr[u], indptr[u + 1]):
                            x = indices[k]
                            up = dist[x] == level
                            su += sigma[x] * up
                            parent[cnt] = x
                            child[cnt] = u
                            cnt += up
                        if su > 0.0:
                            dist[u] = nd
                            sigma[u] = su
                            order[tail] = u
                            tail += 1
                for j in range(hi, tail):
                    v = order[j]
                    seen_arcs += indptr[v + 1] - indptr[v]
                total += nd * (tail - hi)
                lo, hi = hi, tail
                level = nd
            seg[level] = cnt
            dist_sum[s] = total
            reach[s] = tail
            for j in range(tail):
                delta[order[j]] = 0.0
            for layer in range(level - 1, -1, -1):
                for k in range(seg[layer], seg[layer + 1]):
                    v = parent[k]
                    w = child[k]
                    delta[v] += sigma[v] * (1.0 + delta[w]) / sigma[w]
            for j in range(1, tail):
                w = order[j]
                acc[w] += delta[w]
    dependency = np.zeros(n)
    for b in range(nblocks):
        dependency += partial[b]
    return dependency, dist_sum, reach


@lru_cache(maxsize=8)
def _path_stats(g: Graph) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    indptr, indices = g.csr
    nblocks = max(1, min(_SOURCE_BLOCKS, g.n))
    return _path_kernel(indptr.astype(np.int32), indices.astype(np.int32), g.n, nblocks)


def betweenness_raw(g: Graph) -> np.ndarray:
    """Pair-dependency sums over unordered node pairs (unnormalized)."""
    if g.n == 0:
        return np.zeros(0)
    dependency, _, _ = _path_stats(g)
    return dependency / 2.0


def betweenness_normalized(g: Graph) -> CentralityVector:
    """Shortest-path betweenness scaled by ``(n-1)(n-2)/2`` so a star hub scores 1."""
    if g.n < 3:
        raise GraphError("normalized betweenness needs n >= 3")
    scale = (g.n - 1) * (g.n - 2) / 2.0
    return CentralityVector(tuple((betweenness_raw(g) / scale).tolist()), "betweenness")


def closeness_fractions(g: Graph) -> list[tuple[int, int]]:
    """Closeness of every node as an exact ``(numerator, denominator)`` pair.

    Nodes reaching all others score ``(n-1)/D``; nodes in a smaller component
    of ``r`` nodes score ``(r-1)^2 / ((n-1) D)``; isolated nodes score 0.
    """
    n = g.n
    if n == 0:
        return []
    _, dist_sum, reach = _path_stats(g)
    out = []
    for total, r in zip(dist_sum.tolist(), reach.tolist()):
        if r <= 1:
            out.append((0, 1))
        elif r == n:
            out.append((n - 1, total))
        else:
            out.append(((r - 1) * (r - 1), (n - 1) * total))
    return out


def closeness_normalized(g: Graph) -> CentralityVector:
    if g.n < 3:
        raise GraphError("normalized closeness needs n >= 3")
    return CentralityVector(tuple(a / b for a, b in closeness_fractions(g)), "closeness")


def _snap(values: np.ndarray) -> np.ndarray:
    # integer eigenvalues (complete graphs, stars, ...) come back with ulp noise
    nearest = np.round(values)
    close = np.abs(values - nearest) <= _INTEGER_SNAP_TOL * np.maximum(1.0, np.abs(values))
    return np.where(close, nearest, values)


@lru_cache(maxsize=8)
def _eigh(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    if g.n > DENSE_EIGEN_LIMIT:
        raise GraphError(
            f"full adjacency eigendecomposition limited to n <= {DENSE_EIGEN_LIMIT}, got {g.n}"
        )
    vals, vecs = np.linalg.eigh(g.adjacency_matrix())
    return vals, vecs


def adjacency_spectrum(g: Graph) -> Spectrum:
    if g.n == 0:
        return Spectrum(())
    vals, _ = _eigh(g)
    vals = _snap(vals)[::-1]
    return Spectrum(tuple(vals.tolist()))


def _top_eigenspace_sparse(g: Graph) -> tuple[float, np.ndarray]:
    from scipy.sparse import csr_matrix
    from scipy.sparse.linalg import eigsh

    indptr, indices = g.csr
    a = csr_matrix((np.ones(len(indices)), indices, indptr), shape=(g.n, g.n))
    k = min(6, g.n - 1)
    vals, vecs = eigsh(a, k=k, which="LA", tol=1e-12, maxiter=100000)
    top = vals.max()
    keep = np.abs(vals - top) <= _EIGEN_TIE_TOL * max(1.0, abs(top))
    return float(top), vecs[:, keep]


def eigenvector_l2(g: Graph) -> CentralityVector:
    """Principal adjacency eigenvector with unit L2 norm.

    When the top eigenvalue is repeated (disconnected graphs) the degree vector
    is projected onto that eigenspace, which keeps the choice independent of
    node labels. Regular graphs get the exact uniform vector.
    """
    n = g.n
    if n == 0:
        return CentralityVector((), "eigenvector")
    if g.m == 0:
        return CentralityVector((0.0,) * n, "eigenvector")
    deg = np.asarray(g.degrees, dtype=float)
    if len(set(g.degrees)) == 1:
        return CentralityVector((1.0 / math.sqrt(n),) * n, "eigenvector")
    if n > DENSE_EIGEN_LIMIT:
        _, basis = _top_eigenspace_sparse(g)
    else:
        vals, vecs = _eigh(g)
        top = vals[-1]
        basis = vecs[:, np.abs(vals - top) <= _EIGEN_TIE_TOL * max(1.0, abs(top))]
    v = basis @ (basis.T @ deg)
    if v.sum() < 0:
        v = -v
    v = np.clip(v, 0.0, None)
    v /= np.linalg.norm(v)
    return CentralityVector(tuple(v.tolist()), "eigenvector")


def _endpoint_sums(g: Graph) -> tuple[int, int, int, int]:
    deg = np.asarray(g.degrees, dtype=np.int64)
    if g.m == 0:
        return 0, 0, 0, 0
    e = np.array(g.sorted_edges, dtype=np.int64)
    du, dv = deg[e[:, 0]], deg[e[:, 1]]
    s1 = int((du + dv).sum())
    s2 = int((du * du + dv * dv).sum())
    sxy = 2 * int((du * dv).sum())
    return 2 * g.m, s1, s2, sxy


def assortativity_fraction(g: Graph) -> tuple[int, int]:
    """Degree assortativity as an exact ``(numerator, denominator)`` pair.

    ``(1, 1)`` when endpoint degrees have no variance.
    """
    if g.m == 0:
        raise GraphError("assortativity is undefined without edges")
    count, s1, s2, sxy = _endpoint_sums(g)
    num = count * sxy - s1 * s1
    den = count * s2 - s1 * s1
    if den == 0:
        return 1, 1
    return num, den


def degree_assortativity(g: Graph) -> float:
    """Pearson correlation of degrees over both orientations of every edge."""
    num, den = assortativity_fraction(g)
    return num / den
