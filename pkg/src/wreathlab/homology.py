"""Exact integer linear algebra: Smith normal form, chain complexes, homology.

Matrices are numpy arrays with ``dtype=object`` holding Python ints, so all
arithmetic is arbitrary precision. Nothing in this module touches floats.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, ParseError


def int_matrix(data, rows: int | None = None, cols: int | None = None) -> np.ndarray:
    """Coerce ``data`` to a dense object-dtype integer matrix.

    ``rows``/``cols`` are needed to build empty matrices with a definite shape.
    """
    if isinstance(data, np.ndarray) and data.ndim == 2:
        arr = data.astype(object)
    else:
        data = [list(r) for r in data]
        if not data:
            arr = np.zeros((0, cols or 0), dtype=object)
        else:
            arr = np.empty((len(data), len(data[0])), dtype=object)
            for i, row in enumerate(data):
                if len(row) != arr.shape[1]:
                    raise DomainError("matrix rows have inconsistent lengths")
                for j, x in enumerate(row):
                    arr[i, j] = x
    if rows is not None and cols is not None and arr.size == 0:
        arr = np.zeros((rows, cols), dtype=object)
    if (rows is not None and arr.shape[0] != rows) or (cols is not None and arr.shape[1] != cols):
        raise DomainError(f"matrix shape {arr.shape} does not match ({rows}, {cols})")
    for x in arr.flat:
        if isinstance(x, bool) or not isinstance(x, (int, np.integer)):
            raise DomainError(f"matrix entries must be integers, got {x!r}")
    return np.vectorize(int, otypes=[object])(arr) if arr.size else arr


def zero_matrix(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=object)


def identity_matrix(n: int) -> np.ndarray:
    m = zero_matrix(n, n)
    for i in range(n):
        m[i, i] = 1
    return m


def smith_normal_form(M, transforms: bool = False):
    """Smith normal form of an integer matrix.

    Returns the list of diagonal entries ``d_1 | d_2 | ...`` (length
    ``min(rows, cols)``, non-negative). With ``transforms=True`` returns
    ``(diagonal, U, V)`` where ``U`` and ``V`` are unimodular and
    ``U @ M @ V`` is the diagonal matrix.

    Pivots are the nonzero entries of least absolute value in the remaining
    block, ties broken by row-major position.
    """
    M = int_matrix(M)
    r, c = M.shape
    A = [[int(x) for x in row] for row in M]
    U = [[int(i == j) for j in range(r)] for i in range(r)] if transforms else None
    V = [[int(i == j) for j in range(c)] for i in range(c)] if transforms else None

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        if U is not None:
            U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in A:
            row[dst] += q * row[src]
        if V is not None:
            for row in V:
                row[dst] += q * row[src]

    t = 0
    while t < min(r, c):
        while True:
            best = None
            for i in range(t, r):
                row = A[i]
                for j in range(t, c):
                    x = row[j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
                        if best[0] == 1:
                            break
                if best is not None and best[0] == 1:
                    break
            if best is None:
                break
            _, i, j = best
            if i != t:
                swap_rows(i, t)
            if j != t:
                swap_cols(j, t)
            piv = A[t][t]
            clear = True
            for i in range(t + 1, r):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // piv))
                    clear = clear and A[i][t] == 0
            for j in range(t + 1, c):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // piv))
                    clear = clear and A[t][j] == 0
            if not clear:
                continue
            bad = next(
                (i for i in range(t + 1, r) for j in range(t + 1, c) if A[i][j] % piv),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if best is None:
            break
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]
        t += 1

    diagonal = [A[i][i] for i in range(min(r, c))]
    if not transforms:
        return diagonal
    return diagonal, int_matrix(U, r, r), int_matrix(V, c, c)


def matrix_rank(M) -> int:
    return sum(1 for d in smith_normal_form(M) if d)


@dataclass(frozen=True)
class HomologyGroup:
    """Finitely generated abelian group ``Z^betti + Z/t_1 + ... + Z/t_k``.

    Torsion coefficients are the invariant factors: each ``>= 2`` and each
    dividing the next. Equality is therefore isomorphism.
    """

    betti: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        torsion = tuple(int(t) for t in self.torsion)
        object.__setattr__(self, "torsion", torsion)
        if self.betti < 0:
            raise DomainError("betti number must be non-negative")
        if any(t < 2 for t in torsion):
            raise DomainError(f"torsion coefficients must be >= 2: {torsion}")
        if any(b % a for a, b in zip(torsion, torsion[1:])):
            raise DomainError(f"torsion coefficients must be in divisibility order: {torsion}")

    @classmethod
    def from_invariants(cls, betti: int, orders: Iterable[int]) -> "HomologyGroup":
        """Normalize an arbitrary list of cyclic orders (0 meaning Z)."""
        orders = [abs(int(o)) for o in orders]
        betti += sum(1 for o in orders if o == 0)
        finite = [o for o in orders if o > 1]
        if not finite:
            return cls(betti, ())
        diag = zero_matrix(len(finite), len(finite))
        for i, o in enumerate(finite):
            diag[i, i] = o
        return cls(betti, tuple(d for d in smith_normal_form(diag) if d > 1))

    @property
    def is_free(self) -> bool:
        return not self.torsion

    @property
    def is_trivial(self) -> bool:
        return self.betti == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.betti == 1:
            parts.append("Z")
        elif self.betti > 1:
            parts.append(f"Z^{self.betti}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"betti": self.betti, "torsion": list(self.torsion)}


def direct_sum(*groups: HomologyGroup) -> HomologyGroup:
    return HomologyGroup.from_invariants(
        sum(g.betti for g in groups), [t for g in groups for t in g.torsion]
    )


def cokernel(M) -> HomologyGroup:
    """``Z^rows / image(M)``."""
    M = int_matrix(M)
    diag = smith_normal_form(M)
    rank = sum(1 for d in diag if d)
    return HomologyGroup(M.shape[0] - rank, tuple(d for d in diag if d > 1))


def kernel_rank(M) -> int:
    M = int_matrix(M)
    return M.shape[1] - matrix_rank(M)


class ChainComplex:
    """Finite chain complex of free abelian groups.

    ``ranks[p]`` is the rank of the degree-``p`` chain group for
    ``0 <= p <= top``; ``boundary(p)`` maps degree ``p`` to degree ``p-1``
    with rows indexed by degree ``p-1`` cells. ``truncated=True`` marks a
    complex cut off at ``top`` whose true ``∂_{top+1}`` is not known, so
    homology is unavailable in degree ``top``.
    """

    def __init__(self, ranks: Sequence[int], boundaries: dict | Sequence | None = None,
                 truncated: bool = False, check: bool = True):
        self.ranks = tuple(int(r) for r in ranks)
        if any(r < 0 for r in self.ranks):
            raise DomainError("chain ranks must be non-negative")
        self.truncated = truncated
        if boundaries is None:
            boundaries = {}
        elif not isinstance(boundaries, dict):
            boundaries = {p + 1: b for p, b in enumerate(boundaries)}
        for p in boundaries:
            if not 1 <= int(p) <= self.top:
                raise DomainError(f"boundary ∂_{p} out of range for top degree {self.top}")
        self._boundaries = {}
        for p in range(1, self.top + 1):
            b = boundaries.get(p)
            shape = (self.ranks[p - 1], self.ranks[p])
            self._boundaries[p] = zero_matrix(*shape) if b is None else int_matrix(b, *shape)
        if check:
            for p in range(2, self.top + 1):
                if np.any(self._boundaries[p - 1].dot(self._boundaries[p])):
                    raise DomainError(f"∂_{p - 1} ∘ ∂_{p} = 0 fails")

    @property
    def top(self) -> int:
        return len(self.ranks) - 1

    def boundary(self, p: int) -> np.ndarray:
        if 1 <= p <= self.top:
            return self._boundaries[p]
        rows = self.ranks[p - 1] if 1 <= p <= self.top + 1 else 0
        cols = self.ranks[p] if 0 <= p <= self.top else 0
        return zero_matrix(rows, cols)

    @cached_property
    def _snf(self) -> dict:
        return {p: smith_normal_form(self._boundaries[p]) for p in range(1, self.top + 1)}

    def euler_characteristic(self) -> int:
        return sum((-1) ** p * r for p, r in enumerate(self.ranks))

    def to_json(self) -> dict:
        out = {
            "ranks": list(self.ranks),
            "boundaries": {
                str(p): [[int(x) for x in row] for row in b] for p, b in self._boundaries.items()
            },
        }
        if self.truncated:
            out["truncated"] = True
        return out

    @classmethod
    def from_json(cls, data: dict) -> "ChainComplex":
        if not isinstance(data, dict) or "ranks" not in data:
            raise ParseError('chain-complex file must be an object with a "ranks" list')
        try:
            boundaries = {int(k): v for k, v in data.get("boundaries", {}).items()}
        except (TypeError, ValueError, AttributeError):
            raise ParseError("boundary keys must be integer degrees") from None
        try:
            return cls(data["ranks"], boundaries, truncated=bool(data.get("truncated", False)))
        except DomainError as exc:
            raise ParseError(str(exc)) from None


def load_chain_complex(path) -> ChainComplex:
    with open(path) as fh:
        return ChainComplex.from_json(json.load(fh))


def homology_of(complex: ChainComplex, p: int) -> HomologyGroup:
    """``H_p = ker ∂_p / im ∂_{p+1}`` in canonical form."""
    last = complex.top - 1 if complex.truncated else complex.top
    if not 0 <= p <= last:
        raise DomainError(f"p and p+1 within complex range: p={p}, valid 0..{last}")
    snf = complex._snf
    rank_out = sum(1 for d in snf.get(p, ()) if d)
    incoming = snf.get(p + 1, ())
    rank_in = sum(1 for d in incoming if d)
    return HomologyGroup(
        complex.ranks[p] - rank_out - rank_in, tuple(d for d in incoming if d > 1)
    )


def homology_all(complex: ChainComplex) -> list:
    last = complex.top - 1 if complex.truncated else complex.top
    return [homology_of(complex, p) for p in range(last + 1)]


def betti_numbers(complex: ChainComplex) -> list:
    return [h.betti for h in homology_all(complex)]
