"""Simple undirected graphs, labeled graph samples, forbidden-subgraph
families, and the small search primitives the graph checkers need: induced
pattern detection by exhaustive tuple search and acyclicity by union-find.

Graphs on N vertices encode as assignments of width N*N (row-major adjacency
matrix), which is how they travel through distributions and scenario files.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .booleans import Assignment
from .errors import InputError, WidthMismatchError

__all__ = [
    "Graph",
    "GraphSample",
    "GraphSampleSet",
    "ForbiddenFamily",
    "VertexSet",
    "complete_graph",
    "path_graph",
    "cycle_graph",
    "find_induced_copy",
    "free_of_family",
    "is_acyclic",
]


def _norm_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 1..order."""

    order: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        if self.order < 1:
            raise InputError(f"graph order must be >= 1, got {self.order}")
        for u, v in self.edges:
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            if not (1 <= u < v <= self.order):
                raise InputError(f"edge ({u}, {v}) not normalized within 1..{self.order}")

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        return cls(order, frozenset(_norm_edge(u, v) for u, v in edges))

    @cached_property
    def adjacency(self) -> tuple[int, ...]:
        """Neighbor bitmask per vertex (bit w-1 set iff w is adjacent)."""
        adj = [0] * (self.order + 1)
        for u, v in self.edges:
            adj[u] |= 1 << (v - 1)
            adj[v] |= 1 << (u - 1)
        return tuple(adj)

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adjacency[u] >> (v - 1)) & 1)

    def edges_avoiding(self, removed: frozenset[int]) -> Iterator[tuple[int, int]]:
        for u, v in self.edges:
            if u not in removed and v not in removed:
                yield u, v

    def to_assignment(self) -> Assignment:
        """Row-major adjacency matrix as a width-order**2 assignment."""
        n = self.order
        mask = 0
        for u, v in self.edges:
            mask |= 1 << ((u - 1) * n + (v - 1))
            mask |= 1 << ((v - 1) * n + (u - 1))
        return Assignment(n * n, mask)

    @classmethod
    def from_assignment(cls, x: Assignment, order: int) -> "Graph":
        if order * order != x.n:
            raise WidthMismatchError(
                f"width {x.n} is not the adjacency matrix of {order} vertices"
            )
        edges = set()
        for u in range(1, order + 1):
            if (x.mask >> ((u - 1) * order + (u - 1))) & 1:
                raise InputError(f"adjacency matrix has a self-loop at vertex {u}")
            for v in range(u + 1, order + 1):
                uv = (x.mask >> ((u - 1) * order + (v - 1))) & 1
                vu = (x.mask >> ((v - 1) * order + (u - 1))) & 1
                if uv != vu:
                    raise InputError(f"adjacency matrix not symmetric at ({u}, {v})")
                if uv:
                    edges.add((u, v))
        return cls(order, frozenset(edges))

    def __str__(self) -> str:
        return f"Graph(order={self.order}, edges={sorted(self.edges)})"


@dataclass(frozen=True)
class GraphSample:
    graph: Graph
    label: int

    def __post_init__(self) -> None:
        if self.label not in (0, 1):
            raise InputError(f"label must be 0 or 1, got {self.label!r}")


class GraphSampleSet:
    """Labeled graphs over a common vertex set; graphs pairwise distinct."""

    __slots__ = ("samples", "order")

    def __init__(self, samples: Iterable[GraphSample], order: int | None = None):
        seen: dict[frozenset[tuple[int, int]], int] = {}
        kept: list[GraphSample] = []
        for s in samples:
            if order is None:
                order = s.graph.order
            elif s.graph.order != order:
                raise WidthMismatchError(
                    f"graph order {s.graph.order} != expected {order}"
                )
            prev = seen.get(s.graph.edges)
            if prev is None:
                seen[s.graph.edges] = s.label
                kept.append(s)
            elif prev != s.label:
                raise InputError("identical graphs appear with conflicting labels")
        if order is None:
            raise InputError("cannot infer order of an empty graph sample set; pass order")
        self.samples: tuple[GraphSample, ...] = tuple(kept)
        self.order = order

    def __len__(self) -> int:
        return len(self.samples)

    def __iter__(self) -> Iterator[GraphSample]:
        return iter(self.samples)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GraphSampleSet):
            return NotImplemented
        return self.order == other.order and self.samples == other.samples

    def __repr__(self) -> str:
        return f"GraphSampleSet(order={self.order}, t={len(self.samples)})"


class ForbiddenFamily:
    """A nonempty family of forbidden induced subgraphs."""

    __slots__ = ("members", "p", "q")

    def __init__(self, members: Sequence[Graph]):
        if not members:
            raise InputError("forbidden family must be nonempty")
        self.members: tuple[Graph, ...] = tuple(members)
        self.p = len(self.members)
        self.q = max(g.order for g in self.members)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ForbiddenFamily):
            return NotImplemented
        return self.members == other.members

    def __repr__(self) -> str:
        return f"ForbiddenFamily(p={self.p}, q={self.q})"


@dataclass(frozen=True)
class VertexSet:
    """A deletion-set hypothesis: a subset of the N ambient vertices."""

    vertices: frozenset[int]
    order: int

    def __post_init__(self) -> None:
        for v in self.vertices:
            if not 1 <= v <= self.order:
                raise InputError(f"vertex {v} out of range [1, {self.order}]")

    def __str__(self) -> str:
        return "{" + ", ".join(map(str, sorted(self.vertices))) + "}"


def complete_graph(order: int) -> Graph:
    return Graph.from_edges(
        order, itertools.combinations(range(1, order + 1), 2)
    )


def path_graph(order: int) -> Graph:
    return Graph.from_edges(order, ((i, i + 1) for i in range(1, order)))


def cycle_graph(order: int) -> Graph:
    if order < 3:
        raise InputError(f"a simple cycle needs >= 3 vertices, got {order}")
    edges = [(i, i + 1) for i in range(1, order)] + [(1, order)]
    return Graph.from_edges(order, edges)


def find_induced_copy(
    graph: Graph, pattern: Graph, removed: frozenset[int] = frozenset()
) -> tuple[int, ...] | None:
    """First induced copy of ``pattern`` in ``graph - removed``, scanning
    ordered vertex tuples in lexicographic order; None if there is none.

    Backtracks position by position so infeasible prefixes are cut, which
    leaves the first complete tuple identical to a plain product scan.
    """
    hosts = [v for v in range(1, graph.order + 1) if v not in removed]
    q = pattern.order
    if len(hosts) < q:
        return None
    g_adj = graph.adjacency
    p_adj = pattern.adjacency
    placed: list[int] = []

    def backtrack() -> tuple[int, ...] | None:
        pos = len(placed)
        if pos == q:
            return tuple(placed)
        want = p_adj[pos + 1]
        for h in hosts:
            if h in placed:
                continue
            ok = True
            for a in range(pos):
                if ((g_adj[h] >> (placed[a] - 1)) & 1) != ((want >> a) & 1):
                    ok = False
                    break
            if ok:
                placed.append(h)
                result = backtrack()
                if result is not None:
                    return result
                placed.pop()
        return None

    return backtrack()


def find_any_induced_copy(
    graph: Graph, family: ForbiddenFamily, removed: frozenset[int] = frozenset()
) -> tuple[int, ...] | None:
    """First induced copy of any family member (members scanned in order)."""
    for pattern in family.members:
        tup = find_induced_copy(graph, pattern, removed)
        if tup is not None:
            return tup
    return None


def free_of_family(
    graph: Graph, family: ForbiddenFamily, removed: frozenset[int] = frozenset()
) -> bool:
    return find_any_induced_copy(graph, family, removed) is None


def is_acyclic(graph: Graph, removed: frozenset[int] = frozenset()) -> bool:
    """Union-find cycle detection on the graph minus the removed vertices."""
    parent = list(range(graph.order + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in graph.edges_avoiding(removed):
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True
