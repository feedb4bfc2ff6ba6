"""Cellular chain complexes of polyhedral products ``X^L``.

``X`` is a CW model with a single 0-cell (the basepoint). A cell of ``X^L``
is a clique ``σ`` of ``L`` together with a positive-dimensional cell of ``X``
on each vertex of ``σ``; every other coordinate sits at the basepoint.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InvariantError, ParseError
from .graphs import FlagComplex, SimpleGraph, enumerate_cliques, flag_complex
from .homology import ChainComplex, HomologyGroup, homology_of, zero_matrix

MAX_DEFAULT_DIM = 6


@dataclass(frozen=True)
class CellModel:
    """A finite CW complex with exactly one 0-cell, as a cellular chain complex."""

    name: str
    chains: ChainComplex

    def __post_init__(self):
        if not self.chains.ranks or self.chains.ranks[0] != 1:
            raise DomainError("single 0-cell (basepoint) required")
        if self.chains.truncated:
            raise DomainError("cell model must be a complete chain complex")

    @property
    def top(self) -> int:
        return self.chains.top

    def cells(self, d: int) -> range:
        return range(self.chains.ranks[d]) if 0 <= d <= self.top else range(0)

    def boundary_column(self, d: int, k: int) -> list:
        """``[(index, coefficient), ...]`` for the boundary of cell ``k`` in dimension ``d``."""
        col = self.chains.boundary(d)[:, k]
        return [(i, int(c)) for i, c in enumerate(col) if c]

    def to_json(self) -> dict:
        out = self.chains.to_json()
        out["basepoint"] = 0
        return out

    @classmethod
    def from_json(cls, data: dict, name: str = "custom") -> "CellModel":
        if not isinstance(data, dict):
            raise ParseError("cell model must be a JSON object")
        if data.get("basepoint", 0) != 0:
            raise ParseError("basepoint must be the 0-cell with index 0")
        try:
            return cls(name, ChainComplex.from_json(data))
        except DomainError as exc:
            raise ParseError(str(exc)) from None


def _model(name, ranks, boundaries=None):
    return CellModel(name, ChainComplex(ranks, boundaries or {}))


CIRCLE = _model("circle", [1, 1])
WEDGE2 = _model("wedge2", [1, 2])
PROJECTIVE_PLANE = _model("projective_plane", [1, 1, 1], {2: [[2]]})
TORUS = _model("torus", [1, 2, 1])

BUILTIN_MODELS = {m.name: m for m in (CIRCLE, WEDGE2, PROJECTIVE_PLANE, TORUS)}


def cell_model(spec) -> CellModel:
    """Look up a built-in model by name, or read one from a JSON file path."""
    if isinstance(spec, CellModel):
        return spec
    if spec in BUILTIN_MODELS:
        return BUILTIN_MODELS[spec]
    with open(spec) as fh:
        return CellModel.from_json(json.load(fh), name=str(spec))


@dataclass(frozen=True, order=True)
class PolyCell:
    """``support`` is a sorted clique; ``assignment[i]`` is the ``(dim, index)``
    cell of X placed on ``support[i]``."""

    support: tuple
    assignment: tuple

    @property
    def dimension(self) -> int:
        return sum(d for d, _ in self.assignment)


class PolyhedralProductComplex(ChainComplex):
    """Chain complex of ``X^L`` together with its cell basis."""

    def __init__(self, L: FlagComplex, X: CellModel, cells: list, boundaries: dict,
                 truncated: bool):
        self.L = L
        self.X = X
        self.cells = cells
        try:
            super().__init__([len(c) for c in cells], boundaries, truncated=truncated)
        except DomainError as exc:
            raise InvariantError(f"polyhedral product boundary: {exc}") from None


def full_dimension(L: FlagComplex, X: CellModel) -> int:
    """Top cell dimension of ``X^L``."""
    return (L.dimension + 1) * X.top


def _compositions(total: int, parts: int, largest: int):
    """Tuples of ``parts`` integers in ``[1, largest]`` summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(1, min(largest, total - parts + 1) + 1):
        for rest in _compositions(total - first, parts - 1, largest):
            yield (first,) + rest


def polyprod_cells(L: FlagComplex, X: CellModel, p: int) -> list:
    """Cells of ``X^L`` in dimension ``p``, sorted by (support, assignment)."""
    g = L.base
    out = []
    for m in range(-1, L.dim_cap + 1):
        size = m + 1
        if size > p or (size and size * X.top < p):
            continue
        for simplex in L.simplices_of(m):
            for dims in _compositions(p, size, X.top):
                for idx in itertools.product(*(X.cells(d) for d in dims)):
                    out.append(PolyCell(simplex, tuple(zip(dims, idx))))
    out.sort(key=lambda c: (tuple(g.index(v) for v in c.support), c.assignment))
    return out


def cell_boundary(cell: PolyCell, X: CellModel) -> dict:
    """Graded Leibniz rule. Differentiating coordinate ``i`` carries
    ``(-1) ** (d_1 + ... + d_{i-1})``; a 0-cell in the result removes that
    vertex from the support."""
    out = {}
    sign_exp = 0
    for i, (d, k) in enumerate(cell.assignment):
        sign = -1 if sign_exp % 2 else 1
        for j, c in X.boundary_column(d, k):
            if d - 1 == 0:
                face = PolyCell(cell.support[:i] + cell.support[i + 1:],
                                cell.assignment[:i] + cell.assignment[i + 1:])
            else:
                face = PolyCell(cell.support, cell.assignment[:i] + ((d - 1, j),) + cell.assignment[i + 1:])
            out[face] = out.get(face, 0) + sign * c
        sign_exp += d
    return {f: c for f, c in out.items() if c}


def build_polyprod_complex(L: FlagComplex, X: CellModel, dim_cap: int | None = None
                           ) -> PolyhedralProductComplex:
    """Cellular chain complex of ``X^L`` through dimension ``dim_cap``.

    The default ``dim_cap`` is the top dimension of ``X^L``, capped at 6. When
    ``dim_cap`` is below the top dimension the result is marked truncated.
    """
    X = cell_model(X)
    top = full_dimension(L, X)
    if dim_cap is None:
        dim_cap = min(top, MAX_DEFAULT_DIM)
    if dim_cap < 0:
        raise DomainError(f"dim_cap ≥ 0 required, got {dim_cap}")
    cap = min(dim_cap, top)
    cells = [polyprod_cells(L, X, p) for p in range(cap + 1)]
    boundaries = {}
    for p in range(1, cap + 1):
        row_of = {c: i for i, c in enumerate(cells[p - 1])}
        mat = zero_matrix(len(cells[p - 1]), len(cells[p]))
        for j, cell in enumerate(cells[p]):
            for face, coeff in cell_boundary(cell, X).items():
                mat[row_of[face], j] += coeff
        boundaries[p] = mat
    return PolyhedralProductComplex(L, X, cells, boundaries, truncated=cap < top)


def raag_homology(graph: SimpleGraph, p: int) -> HomologyGroup:
    """``H_p`` of the right-angled Artin group on ``graph``, via the
    polyhedral product of circles over its flag complex."""
    if p < 0:
        raise DomainError(f"p must be non-negative, got {p}")
    C = build_polyprod_complex(flag_complex(graph, p), CIRCLE, p + 1)
    if p > C.top:
        return HomologyGroup()
    return homology_of(C, p)


def check_star_hypothesis(L: FlagComplex, X: CellModel, dim_cap: int | None = None) -> bool:
    """True iff every boundary map of the cellular complex of ``X^L`` vanishes."""
    C = build_polyprod_complex(L, X, dim_cap)
    return not any(np.any(C.boundary(p)) for p in range(1, C.top + 1))


def clique_count(graph: SimpleGraph, p: int) -> int:
    return len(enumerate_cliques(graph, p))
