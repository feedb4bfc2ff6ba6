"""Homology of ``B ⋊_φ Z`` for a right-angled Artin group ``B``.

Two independent routes are provided:

* :func:`mapping_torus_homology` builds the algebraic mapping torus of the
  chain-level automorphism of the polyhedral product of circles and takes
  its homology with Smith normal form.
* :func:`nakaoka_decomposition` starts from ``H_*(B)`` (free on cliques) and
  the induced action ``φ_*``, and sums ``Tor_0 = coker(φ_* - 1)`` in degree
  ``p`` with ``Tor_1 = ker(φ_* - 1)`` in degree ``p - 1``.

The two are computed along separate code paths (the chain map uses Koszul
signs on graded cells; the induced map uses permutation parity), so their
agreement is a genuine check.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InvariantError, ParseError
from .graphs import SimpleGraph, enumerate_cliques, flag_complex
from .homology import (
    ChainComplex, HomologyGroup, cokernel, direct_sum, homology_of, identity_matrix,
    kernel_rank, zero_matrix,
)
from .polyprod import CIRCLE, PolyCell, PolyhedralProductComplex, build_polyprod_complex, raag_homology


@dataclass(frozen=True)
class GraphAutomorphism:
    """A vertex permutation of a finite graph that preserves edges."""

    graph: SimpleGraph
    perm: tuple  # perm[i] = index of the image of vertex i

    @classmethod
    def from_mapping(cls, graph: SimpleGraph, mapping: dict) -> "GraphAutomorphism":
        for v in mapping:
            graph.index(v)
        images = tuple(graph.index(mapping.get(v, v)) for v in graph.vertices)
        if sorted(images) != list(range(len(graph))):
            raise DomainError(f"automorphism must be bijective: {mapping!r}")
        vs = graph.vertices
        for u, v in graph.edges:
            a, b = vs[images[graph.index(u)]], vs[images[graph.index(v)]]
            if not graph.adjacent(a, b):
                raise DomainError(f"image of every edge is an edge: {(u, v)} -> {(a, b)}")
        return cls(graph, images)

    @classmethod
    def identity(cls, graph: SimpleGraph) -> "GraphAutomorphism":
        return cls(graph, tuple(range(len(graph))))

    def __call__(self, v):
        g = self.graph
        return g.vertices[self.perm[g.index(v)]]

    def compose(self, other: "GraphAutomorphism") -> "GraphAutomorphism":
        """``self ∘ other`` (apply ``other`` first)."""
        if other.graph != self.graph:
            raise DomainError("automorphisms of different graphs")
        return GraphAutomorphism(self.graph, tuple(self.perm[i] for i in other.perm))

    def mapping(self) -> dict:
        vs = self.graph.vertices
        return {vs[i]: vs[j] for i, j in enumerate(self.perm)}

    def to_json(self) -> dict:
        return {"perm": {k: v for k, v in self.mapping().items() if k != v}}


def automorphism_from_json(graph: SimpleGraph, data: dict) -> GraphAutomorphism:
    if not isinstance(data, dict) or not isinstance(data.get("perm"), dict):
        raise ParseError('automorphism file must be an object with a "perm" mapping')
    try:
        return GraphAutomorphism.from_mapping(graph, data["perm"])
    except DomainError as exc:
        raise ParseError(str(exc)) from None


def load_automorphism(graph: SimpleGraph, path) -> GraphAutomorphism:
    with open(path) as fh:
        return automorphism_from_json(graph, json.load(fh))


def _parity(seq: list) -> int:
    """Sign of the permutation that sorts ``seq`` (distinct entries), by cycles."""
    target = {v: i for i, v in enumerate(sorted(seq))}
    seen = [False] * len(seq)
    sign = 1
    for start in range(len(seq)):
        if seen[start]:
            continue
        length, j = 0, start
        while not seen[j]:
            seen[j] = True
            j = target[seq[j]]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True)
class InducedMap:
    """Signed permutation matrix of ``φ_*`` on the ``p``-clique basis."""

    degree: int
    basis: tuple
    matrix: np.ndarray

    def __eq__(self, other):
        return (isinstance(other, InducedMap) and self.degree == other.degree
                and self.basis == other.basis and np.array_equal(self.matrix, other.matrix))

    __hash__ = None


def induced_clique_map(graph: SimpleGraph, phi: GraphAutomorphism, p: int) -> InducedMap:
    """``c ↦ ε·c'`` with ``c'`` the sorted image of the clique ``c`` and ``ε``
    the sign of the permutation sorting the image tuple."""
    if phi.graph != graph:
        raise DomainError("φ must be an automorphism of the given graph")
    basis = tuple(enumerate_cliques(graph, p))
    row = {c: i for i, c in enumerate(basis)}
    mat = zero_matrix(len(basis), len(basis))
    for j, c in enumerate(basis):
        image = [graph.index(phi(v)) for v in c]
        mat[row[graph.sort_vertices(phi(v) for v in c)], j] = _parity(image)
    return InducedMap(p, basis, mat)


def cellular_map(C: PolyhedralProductComplex, phi: GraphAutomorphism) -> dict:
    """Chain map on ``C_*(X^L)`` induced by permuting coordinates with ``φ``.

    Moving graded factors past each other costs ``(-1)^(d_i d_j)`` per
    transposed pair (Koszul rule).
    """
    g = C.L.base
    maps = {}
    for p, cells in enumerate(C.cells):
        row = {c: i for i, c in enumerate(cells)}
        mat = zero_matrix(len(cells), len(cells))
        for j, cell in enumerate(cells):
            moved = [(g.index(phi(v)), a) for v, a in zip(cell.support, cell.assignment)]
            sign = 1
            for x in range(len(moved)):
                for y in range(x + 1, len(moved)):
                    if moved[x][0] > moved[y][0] and moved[x][1][0] * moved[y][1][0] % 2:
                        sign = -sign
            moved.sort()
            image = PolyCell(tuple(g.vertices[i] for i, _ in moved), tuple(a for _, a in moved))
            mat[row[image], j] = sign
        maps[p] = mat
    return maps


def mapping_torus_complex(C: ChainComplex, chain_map: dict) -> ChainComplex:
    """Algebraic mapping torus: ``M_p = C_p ⊕ C_{p-1}`` with
    ``D(a, b) = (∂a + (f - 1)b, -∂b)``."""
    top = C.top if C.truncated else C.top + 1
    rank = lambda p: C.ranks[p] if 0 <= p <= C.top else 0
    ranks = [rank(p) + rank(p - 1) for p in range(top + 1)]
    boundaries = {}
    for p in range(1, top + 1):
        D = zero_matrix(ranks[p - 1], ranks[p])
        r_a, r_b = rank(p - 1), rank(p - 2)  # row blocks
        c_a, c_b = rank(p), rank(p - 1)  # column blocks
        if r_a and c_a:
            D[:r_a, :c_a] = C.boundary(p)
        if r_a and c_b:
            D[:r_a, c_a:] = chain_map[p - 1] - identity_matrix(c_b)
        if r_b and c_b:
            D[r_a:, c_a:] = -C.boundary(p - 1)
        boundaries[p] = D
    try:
        return ChainComplex(ranks, boundaries, truncated=C.truncated)
    except DomainError as exc:
        raise InvariantError(f"mapping torus: {exc}") from None


def mapping_torus_homology(graph: SimpleGraph, phi: GraphAutomorphism, p: int) -> HomologyGroup:
    """``H_p(B ⋊_φ Z)`` from the mapping torus of the circle-model complex."""
    if p < 0:
        raise DomainError(f"p must be non-negative, got {p}")
    C = build_polyprod_complex(flag_complex(graph, p), CIRCLE, p + 1)
    M = mapping_torus_complex(C, cellular_map(C, phi))
    if p > M.top:
        return HomologyGroup()
    return homology_of(M, p)


def _clique_homology_action(graph, phi, j):
    """``φ_* - 1`` on ``H_j(B)``, after checking the clique basis is a basis."""
    h = raag_homology(graph, j)
    induced = induced_clique_map(graph, phi, j)
    if h != HomologyGroup(len(induced.basis)):
        raise InvariantError(f"H_{j}(B) = {h} is not free on the {j}-cliques")
    return induced.matrix - identity_matrix(len(induced.basis))


def nakaoka_decomposition(graph: SimpleGraph, phi: GraphAutomorphism, p: int) -> HomologyGroup:
    """``Tor_0(H_p(B)) ⊕ Tor_1(H_{p-1}(B))`` over the group ring of ``Z``."""
    if p < 0:
        raise DomainError(f"p must be non-negative, got {p}")
    tor0 = cokernel(_clique_homology_action(graph, phi, p))
    if p == 0:
        return tor0
    tor1 = HomologyGroup(kernel_rank(_clique_homology_action(graph, phi, p - 1)))
    return direct_sum(tor0, tor1)
