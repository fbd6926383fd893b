"""Simple undirected graphs, canonical generators and structural helpers.

Nodes are the integers ``0..n-1``. Graphs are immutable values; every
operation that "modifies" a graph returns a new one.
"""

from __future__ import annotations

import enum
import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "Graph",
    "GraphError",
    "StructuralFacts",
    "Topology",
    "from_edge_list",
    "to_edge_list",
    "generate",
    "saturate",
    "classify",
    "largest_component",
    "permute",
    "enumerate_graphs",
    "MAX_ENUMERATION_N",
]

MAX_ENUMERATION_N = 7


class GraphError(ValueError):
    """Raised for inputs that cannot form (or act on) a simple graph."""


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """A simple undirected graph on nodes ``0..n-1``.

    ``edges`` holds each undirected edge once as a sorted pair. Duplicates
    collapse; self-loops and out-of-range endpoints raise :class:`GraphError`.
    """

    n: int
    edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError(f"node count must be nonnegative, got {self.n}")
        normalized = set()
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"self-loop on node {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={self.n}")
            normalized.add(_norm(int(u), int(v)))
        object.__setattr__(self, "edges", frozenset(normalized))

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[Sequence[int]]) -> "Graph":
        return cls(n, frozenset(_norm(int(u), int(v)) for u, v in pairs))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def sorted_edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.edges))

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return tuple(deg)

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.sorted_edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """Compressed adjacency ``(indptr, indices)`` with int64 entries."""
        if self.m == 0:
            return np.zeros(self.n + 1, dtype=np.int64), np.zeros(0, dtype=np.int64)
        e = np.array(self.sorted_edges, dtype=np.int64)
        src = np.concatenate([e[:, 0], e[:, 1]])
        dst = np.concatenate([e[:, 1], e[:, 0]])
        order = np.lexsort((dst, src))
        src, dst = src[order], dst[order]
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=self.n), out=indptr[1:])
        return indptr, dst

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        for u, v in self.edges:
            a[u, v] = a[v, u] = 1.0
        return a

    def has_edge(self, u: int, v: int) -> bool:
        return _norm(u, v) in self.edges

    def __repr__(self) -> str:
        if self.m <= 12:
            return f"Graph(n={self.n}, edges={list(self.sorted_edges)})"
        return f"Graph(n={self.n}, m={self.m})"


class Topology(str, enum.Enum):
    STAR = "star"
    RING = "ring"
    COMPLETE = "complete"
    STAR_PERTURBED = "star-perturbed"
    RING_PERTURBED = "ring-perturbed"
    COMPLETE_PERTURBED = "complete-perturbed"

    @property
    def min_n(self) -> int:
        if self in (Topology.STAR, Topology.COMPLETE):
            return 1
        return 3

    @property
    def perturbed(self) -> bool:
        return self.value.endswith("-perturbed")


@dataclass(frozen=True)
class StructuralFacts:
    is_complete: bool
    is_star: bool
    is_regular: bool
    saturated_nodes: list[int]
    component_count: int
    degree_sequence: list[int]


def from_edge_list(text: str, explicit_n: int | None = None) -> Graph:
    """Parse whitespace-separated ``u v`` lines into a :class:`Graph`.

    Blank lines and lines starting with ``#`` are skipped. Without
    ``explicit_n`` the node count is one more than the largest id seen.
    """
    pairs: set[tuple[int, int]] = set()
    top = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise GraphError(f"line {lineno}: expected two node ids, got {raw!r}")
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise GraphError(f"line {lineno}: malformed node id in {raw!r}") from None
        if u < 0 or v < 0:
            raise GraphError(f"line {lineno}: negative node id in {raw!r}")
        if u == v:
            raise GraphError(f"line {lineno}: self-loop on node {u}")
        if explicit_n is not None and max(u, v) >= explicit_n:
            raise GraphError(f"line {lineno}: node id {max(u, v)} >= n={explicit_n}")
        top = max(top, u, v)
        pairs.add(_norm(u, v))
    n = explicit_n if explicit_n is not None else top + 1
    return Graph(n, frozenset(pairs))


def to_edge_list(g: Graph, header: bool = True) -> str:
    lines = [f"# n={g.n} m={g.m}"] if header else []
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges)
    return "\n".join(lines) + "\n"


def generate(topology: Topology | str, n: int, seed: int = 0) -> Graph:
    """Build one of the six canonical topologies on ``n`` nodes.

    The perturbed variants use fixed rules: the star moves leaf ``n-1``
    onto leaf ``1``, the ring moves the ``0`` end of edge ``{n-1, 0}`` onto
    node ``1`` (leaving ``0`` pendant), and the complete graph loses edge
    ``{0, 1}``.
    ``seed`` is accepted for interface stability; all kinds are deterministic.
    """
    topology = Topology(topology)
    if n < topology.min_n:
        raise GraphError(f"{topology.value} needs n >= {topology.min_n}, got {n}")
    if topology is Topology.STAR:
        edges = [(0, i) for i in range(1, n)]
    elif topology is Topology.RING:
        edges = [(i, (i + 1) % n) for i in range(n)]
    elif topology is Topology.COMPLETE:
        edges = list(itertools.combinations(range(n), 2))
    elif topology is Topology.STAR_PERTURBED:
        edges = [(0, i) for i in range(1, n - 1)] + [(1, n - 1)]
    elif topology is Topology.RING_PERTURBED:
        edges = [(i, i + 1) for i in range(n - 1)] + [(n - 1, 1)]
    else:
        edges = [e for e in itertools.combinations(range(n), 2) if e != (0, 1)]
    return Graph.from_pairs(n, edges)


def saturate(g: Graph, v: int) -> Graph:
    """Connect ``v`` to every node it is not yet adjacent to."""
    if not 0 <= v < g.n:
        raise GraphError(f"node {v} out of range for n={g.n}")
    if g.degrees[v] == g.n - 1:
        raise GraphError(f"node {v} is already saturated")
    extra = {_norm(v, u) for u in range(g.n) if u != v}
    return Graph(g.n, g.edges | extra)


def _components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    adj = g.neighbors
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    queue.append(y)
        comps.append(sorted(comp))
    return comps


def classify(g: Graph) -> StructuralFacts:
    deg = list(g.degrees)
    n, m = g.n, g.m
    saturated = [i for i, d in enumerate(deg) if d == n - 1]
    is_star = (
        n >= 3
        and m == n - 1
        and len(saturated) == 1
        and all(d == 1 for i, d in enumerate(deg) if i != saturated[0])
    )
    return StructuralFacts(
        is_complete=n >= 1 and len(saturated) == n,
        is_star=is_star,
        is_regular=len(set(deg)) <= 1,
        saturated_nodes=saturated,
        component_count=len(_components(g)),
        degree_sequence=deg,
    )


def _induced(g: Graph, nodes: Sequence[int]) -> Graph:
    index = {old: new for new, old in enumerate(sorted(nodes))}
    pairs = [(index[u], index[v]) for u, v in g.edges if u in index and v in index]
    return Graph.from_pairs(len(index), pairs)


def largest_component(g: Graph) -> Graph:
    """Induced subgraph on the largest connected component, relabeled in order.

    Ties go to the component holding the smallest original node id.
    """
    if g.n == 0:
        raise GraphError("empty graph has no components")
    comps = _components(g)
    # components come out ordered by their smallest node, so max() keeps the first tie
    best = max(comps, key=len)
    if len(best) == g.n:
        return g
    return _induced(g, best)


def permute(g: Graph, p: Sequence[int]) -> Graph:
    """Relabel node ``i`` as ``p[i]``."""
    p = [int(x) for x in p]
    if len(p) != g.n or sorted(p) != list(range(g.n)):
        raise GraphError("relabeling is not a permutation of the node set")
    return Graph.from_pairs(g.n, ((p[u], p[v]) for u, v in g.edges))


def graph_from_mask(n: int, mask: int) -> Graph:
    """The labeled graph whose edge set is bit-selected from the sorted pairs."""
    pairs = list(itertools.combinations(range(n), 2))
    return Graph.from_pairs(n, (pairs[i] for i in range(len(pairs)) if mask >> i & 1))


def enumerate_graphs(n: int, connected_only: bool = False) -> Iterator[Graph]:
    """Yield every labeled simple graph on ``n`` nodes, by edge bitmask ascending."""
    if not 1 <= n <= MAX_ENUMERATION_N:
        raise GraphError(f"enumeration supports 1 <= n <= {MAX_ENUMERATION_N}, got {n}")
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        g = Graph.from_pairs(n, (pairs[i] for i in range(len(pairs)) if mask >> i & 1))
        if connected_only and len(_components(g)) != 1:
            continue
        yield g
