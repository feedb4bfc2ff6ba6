"""Simple graphs, clique enumeration and flag complexes.

Vertices may be any hashable identifiers. Each graph fixes a total order on
its vertices (the order of ``vertices``) and every clique is stored as a tuple
sorted with respect to that order, so that orientations and signs downstream
are deterministic.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

from .errors import DomainError, ParseError

Vertex = Hashable
Clique = tuple  # strictly increasing tuple of vertices w.r.t. the graph order

EMPTY_CLIQUE: Clique = ()


@dataclass(frozen=True)
class SimpleGraph:
    """A finite simple graph with an ordered vertex list.

    Edges are normalized to pairs ``(u, v)`` with ``u`` before ``v`` in the
    vertex order. Loops, unknown endpoints and repeated vertices are rejected.
    """

    vertices: tuple
    edges: frozenset
    _index: dict = field(init=False, repr=False, compare=False, hash=False)
    _adj: dict = field(init=False, repr=False, compare=False, hash=False)

    def __init__(self, vertices: Iterable[Vertex], edges: Iterable[Sequence[Vertex]] = ()):
        vertices = tuple(vertices)
        index = {v: i for i, v in enumerate(vertices)}
        if len(index) != len(vertices):
            raise DomainError("vertices must be distinct")
        normalized = set()
        for edge in edges:
            u, v = tuple(edge)
            if u not in index or v not in index:
                raise DomainError(f"every edge endpoint is a listed vertex: {edge!r}")
            if u == v:
                raise DomainError(f"no loops ({{v,v}} forbidden): {edge!r}")
            normalized.add((u, v) if index[u] < index[v] else (v, u))
        adj = {v: set() for v in vertices}
        for u, v in normalized:
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", frozenset(normalized))
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_adj", {v: frozenset(n) for v, n in adj.items()})

    def __len__(self) -> int:
        return len(self.vertices)

    def index(self, v: Vertex) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise DomainError(f"unknown vertex {v!r}") from None

    def adjacent(self, u: Vertex, v: Vertex) -> bool:
        return v in self._adj[u]

    def neighbors(self, v: Vertex) -> frozenset:
        return self._adj[v]

    def sort_vertices(self, vs: Iterable[Vertex]) -> Clique:
        """Return ``vs`` as a tuple sorted by the graph's vertex order."""
        return tuple(sorted(vs, key=self.index))

    def is_clique(self, vs: Sequence[Vertex]) -> bool:
        if len(set(vs)) != len(vs):
            return False
        return all(self.adjacent(u, v) for u, v in itertools.combinations(vs, 2))

    def sorted_edges(self) -> list:
        return sorted(self.edges, key=lambda e: (self._index[e[0]], self._index[e[1]]))

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "edges": [list(e) for e in self.sorted_edges()]}

    @classmethod
    def from_json(cls, data: dict) -> "SimpleGraph":
        if not isinstance(data, dict) or "vertices" not in data:
            raise ParseError('graph file must be an object with a "vertices" list')
        edges = data.get("edges", [])
        seen = set()
        for e in edges:
            if not isinstance(e, list) or len(e) != 2:
                raise ParseError(f"edge must be a pair: {e!r}")
            key = frozenset(e)
            if key in seen:
                raise ParseError(f"duplicate edge {e!r}")
            seen.add(key)
        try:
            return cls(data["vertices"], edges)
        except DomainError as exc:
            raise ParseError(str(exc)) from None


def load_graph(path) -> SimpleGraph:
    with open(path) as fh:
        return SimpleGraph.from_json(json.load(fh))


def complete_graph(vertices: Iterable[Vertex]) -> SimpleGraph:
    vertices = tuple(vertices)
    return SimpleGraph(vertices, itertools.combinations(vertices, 2))


def path_graph(vertices: Iterable[Vertex]) -> SimpleGraph:
    vertices = tuple(vertices)
    return SimpleGraph(vertices, zip(vertices, vertices[1:]))


def cycle_graph(vertices: Iterable[Vertex]) -> SimpleGraph:
    vertices = tuple(vertices)
    return SimpleGraph(vertices, zip(vertices, vertices[1:] + vertices[:1]))


def enumerate_cliques(graph: SimpleGraph, p: int) -> list:
    """All ``p``-cliques of ``graph`` as sorted tuples, in lexicographic order.

    Cliques are grown by ordered extension: a clique is only extended by
    vertices later than its last vertex, so no deduplication is needed.
    ``p = 0`` gives ``[()]``.
    """
    if p < 0:
        raise DomainError(f"p must be non-negative, got {p}")
    if p == 0:
        return [EMPTY_CLIQUE]
    order = graph.vertices
    later = {
        v: [w for w in order[i + 1:] if graph.adjacent(v, w)] for i, v in enumerate(order)
    }
    out = []

    def extend(clique, candidates):
        if len(clique) == p:
            out.append(clique)
            return
        for j, w in enumerate(candidates):
            extend(clique + (w,), [x for x in candidates[j + 1:] if graph.adjacent(w, x)])

    for v in order:
        extend((v,), later[v])
    return out


@dataclass(frozen=True)
class FlagComplex:
    """Flag complex of a finite graph, truncated at ``dim_cap``.

    ``simplices[m + 1]`` lists the ``m``-simplices (``(m+1)``-cliques), so
    ``simplices[0] == [()]`` is the empty simplex in dimension -1.
    """

    base: SimpleGraph
    dim_cap: int
    simplices: tuple

    def simplices_of(self, m: int) -> tuple:
        if m < -1 or m > self.dim_cap:
            return ()
        return self.simplices[m + 1]

    def counts(self) -> tuple:
        return tuple(len(s) for s in self.simplices)

    @property
    def dimension(self) -> int:
        """Largest ``m`` with a non-empty list of ``m``-simplices."""
        top = -1
        for m in range(self.dim_cap + 1):
            if self.simplices[m + 1]:
                top = m
        return top

    def __contains__(self, simplex) -> bool:
        simplex = tuple(simplex)
        m = len(simplex) - 1
        if m > self.dim_cap:
            return False
        try:
            if simplex != self.base.sort_vertices(simplex):
                return False
        except DomainError:
            return False
        return self.base.is_clique(simplex) if simplex else True


def flag_complex(graph: SimpleGraph, dim_cap: int) -> FlagComplex:
    if dim_cap < 0:
        raise DomainError(f"dim_cap must be non-negative, got {dim_cap}")
    simplices = tuple(tuple(enumerate_cliques(graph, m + 1)) for m in range(-1, dim_cap + 1))
    return FlagComplex(graph, dim_cap, simplices)


def simplex_boundary(complex: FlagComplex, simplex: Sequence[Vertex]) -> dict:
    """Alternating sum of codimension-one faces, as ``{face: coefficient}``.

    Omitting the ``i``-th vertex of the sorted tuple carries sign ``(-1)**i``.
    A vertex has boundary ``{(): 1}`` (the augmentation); the empty simplex
    has zero boundary.
    """
    simplex = tuple(simplex)
    if simplex not in complex:
        raise DomainError(f"simplex belongs to complex: {simplex!r} does not")
    return {simplex[:i] + simplex[i + 1:]: (-1) ** i for i in range(len(simplex))}
