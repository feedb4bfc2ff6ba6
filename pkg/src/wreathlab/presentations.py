"""Finite presentations of graph products and graph-wreath products.

A word is a tuple of ``(generator, exponent)`` letters with exponent ``±1``.
Relators are freely reduced when a :class:`Presentation` is built.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .actions import (
    CatalogAction, FinitePermAction, PeriodicShiftAction, clique_orbits, stabilizer_elements,
)
from .errors import DomainError, ParseError
from .graphs import SimpleGraph
from .homology import HomologyGroup, cokernel, int_matrix, zero_matrix


def free_reduce(word: Iterable) -> tuple:
    out = []
    for letter in word:
        if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def inverse(word: Sequence) -> tuple:
    return tuple((g, -e) for g, e in reversed(word))


def commutator(x: Sequence, y: Sequence) -> tuple:
    """``x y x^-1 y^-1``"""
    return free_reduce(tuple(x) + tuple(y) + inverse(x) + inverse(y))


def conjugate(w: Sequence, x: Sequence) -> tuple:
    """``w x w^-1``"""
    return free_reduce(tuple(w) + tuple(x) + inverse(w))


def gen(symbol: str, exponent: int = 1) -> tuple:
    return ((symbol, 1 if exponent > 0 else -1),) * abs(exponent)


def parse_word(tokens: Sequence[str]) -> tuple:
    word = []
    for tok in tokens:
        if not isinstance(tok, str) or not tok:
            raise ParseError(f"word letters must be non-empty strings: {tok!r}")
        if tok.endswith("^-1"):
            word.append((tok[:-3], -1))
        else:
            word.append((tok, 1))
    return tuple(word)


def format_letter(letter: tuple) -> str:
    g, e = letter
    return g if e > 0 else f"{g}^-1"


def format_word(word: Sequence) -> str:
    return " ".join(format_letter(x) for x in word) if word else "1"


@dataclass(frozen=True)
class Presentation:
    generators: tuple
    relators: tuple
    provenance: dict = field(default_factory=dict, compare=False, hash=False)

    def __init__(self, generators: Iterable[str], relators: Iterable[Sequence] = (),
                 provenance: dict | None = None):
        generators = tuple(generators)
        if len(set(generators)) != len(generators):
            raise DomainError(f"generator names must be distinct: {generators}")
        known = set(generators)
        reduced = []
        for r in relators:
            r = tuple((g, int(e)) for g, e in r)
            for g, e in r:
                if g not in known:
                    raise DomainError(f"relator symbols drawn from generators: {g!r} is not one")
                if e not in (1, -1):
                    raise DomainError(f"letter exponents must be ±1, got {e}")
            reduced.append(free_reduce(r))
        object.__setattr__(self, "generators", generators)
        object.__setattr__(self, "relators", tuple(reduced))
        object.__setattr__(self, "provenance", dict(provenance or {}))

    def __str__(self) -> str:
        rels = ", ".join(format_word(r) for r in self.relators)
        return f"< {', '.join(self.generators)} | {rels} >"

    def relation_matrix(self):
        """Exponent sums: one row per relator, one column per generator."""
        col = {g: j for j, g in enumerate(self.generators)}
        mat = zero_matrix(len(self.relators), len(self.generators))
        for i, r in enumerate(self.relators):
            for g, e in r:
                mat[i, col[g]] += e
        return mat

    def to_json(self) -> dict:
        out = {
            "generators": list(self.generators),
            "relators": [[format_letter(x) for x in r] for r in self.relators],
        }
        if self.provenance:
            out["provenance"] = self.provenance
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Presentation":
        if not isinstance(data, dict) or not isinstance(data.get("generators"), list):
            raise ParseError('presentation must be an object with a "generators" list')
        rels = data.get("relators", [])
        if not isinstance(rels, list) or not all(isinstance(r, list) for r in rels):
            raise ParseError("relators must be a list of letter lists")
        try:
            return cls(data["generators"], [parse_word(r) for r in rels], data.get("provenance"))
        except DomainError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(str(exc)) from None


def load_presentation(path) -> Presentation:
    with open(path) as fh:
        return Presentation.from_json(json.load(fh))


def free_group(*symbols: str) -> Presentation:
    return Presentation(symbols, ())


def cyclic_group(order: int, symbol: str = "a") -> Presentation:
    return Presentation([symbol], [gen(symbol, order)])


def abelianization(P: Presentation) -> HomologyGroup:
    """Smith normal form of the exponent-sum relation matrix."""
    if not P.relators:
        return HomologyGroup(len(P.generators))
    return cokernel(int_matrix(P.relation_matrix()).T)


def _rename(word, suffix):
    return tuple((f"{g}_{suffix}", e) for g, e in word)


def _copy_generators(A: Presentation, names: Sequence) -> list:
    return [f"{a}_{v}" for v in names for a in A.generators]


def graph_product_presentation(graph: SimpleGraph, A: Presentation) -> Presentation:
    """One copy of ``A`` per vertex, plus ``[a_u, b_v]`` for every edge and
    every pair of generators ``a, b`` of ``A``."""
    relators = [_rename(r, v) for v in graph.vertices for r in A.relators]
    for u, v in graph.sorted_edges():
        for a in A.generators:
            for b in A.generators:
                relators.append(commutator(gen(f"{a}_{u}"), gen(f"{b}_{v}")))
    return Presentation(
        _copy_generators(A, graph.vertices), relators,
        {"construction": "graph product", "graph_vertices": len(graph)},
    )


# --------------------------------------------------------------------------
# graph-wreath products


def _h_word(H: Presentation, indices: Sequence[int]) -> tuple:
    return tuple((H.generators[k], 1) for k in indices)


def _finite_orbit_data(action: FinitePermAction, H: Presentation, stabilizer_words):
    if len(H.generators) != len(action.generators):
        raise DomainError(
            "H must have one generator per action generator "
            f"({len(H.generators)} vs {len(action.generators)})"
        )
    g = action.graph
    perm_of = dict(zip(H.generators, action.generators))
    identity = action.identity

    def evaluate(word):
        e = identity
        for sym, exp in reversed(word):
            p = perm_of[sym]
            if exp < 0:
                p = tuple(sorted(range(len(p)), key=p.__getitem__))
            e = tuple(p[x] for x in e)
        return e

    for r in H.relators:
        if evaluate(r) != identity:
            raise DomainError(f"H-relator {format_word(r)} does not act trivially on the graph")

    reps = [c[0] for c in clique_orbits(action, 1).representatives]
    rep_of, word_to = {}, {}
    for r in reps:
        rep_of[r], word_to[r] = r, ()
        queue = deque([r])
        while queue:
            x = queue.popleft()
            for k, p in enumerate(action.generators):
                y = g.vertices[p[g.index(x)]]
                if y not in word_to:
                    rep_of[y], word_to[y] = r, (k,) + word_to[x]
                    queue.append(y)

    stabs, assumed = {}, False
    for r in reps:
        if stabilizer_words is not None and r in stabilizer_words:
            words = [tuple(w) for w in stabilizer_words[r]]
            assumed = True
            for w in words:
                if g.vertices[evaluate(w)[g.index(r)]] != r:
                    raise DomainError(f"stabilizer word {format_word(w)} does not fix {r!r}")
        else:
            _, gens = stabilizer_elements(action, (r,))
            words = [_h_word(H, action.word_for(e)) for e in gens]
        stabs[r] = words

    edges, seen = [], set()
    for r in reps:
        for y in sorted(g.neighbors(r), key=g.index):
            edge = frozenset((r, y))
            if edge in seen:
                continue
            seen |= {frozenset(action.apply(e, (r, y))) for e in action.elements}
            edges.append((r, rep_of[y], _h_word(H, word_to[y])))
    return reps, stabs, edges, assumed


def _periodic_orbit_data(action: PeriodicShiftAction, H: Presentation, stabilizer_words):
    if len(H.generators) != 1:
        raise DomainError("H must be infinite cyclic with a single generator acting as the shift")
    t = H.generators[0]
    if any(sum(e for _, e in r) for r in H.relators):
        raise DomainError("H-relators must have zero exponent sum for the shift action")
    report = clique_orbits(action, 2)
    if not report.finite:
        raise DomainError(
            "Gamma has infinitely many orbits of edges; finitely many orbits of vertices "
            "and edges is necessary for finite presentability, so no finite presentation exists"
        )
    reps = list(action.template)
    stabs = {v: [] for v in reps}
    if stabilizer_words:
        raise DomainError("shift stabilizers are trivial; no stabilizer words may be given")
    edges = []
    for (x, _), (y, d) in report.representatives:
        edges.append((x, y, gen(t, d)))
    return reps, stabs, edges, False


def graph_wreath_presentation(action, A: Presentation, H: Presentation,
                              stabilizer_words: dict | None = None) -> Presentation:
    """Presentation of ``A^Γ ⋊ H`` from orbit data of the action.

    Generators are a copy of ``A`` at one representative per vertex orbit
    together with the generators of ``H``. Relators: ``A``'s relators at each
    representative, ``H``'s relators, commutators of each representative copy
    with its stabilizer words, and ``[a_r, w b_s w^-1]`` for each edge orbit
    ``{r, w·s}``.

    For a :class:`FinitePermAction` the generators of ``H`` correspond, in
    order, to the action's generators and stabilizer words are computed
    unless supplied. For a :class:`PeriodicShiftAction` ``H`` is generated by
    the shift.
    """
    if isinstance(action, FinitePermAction):
        reps, stabs, edges, assumed = _finite_orbit_data(action, H, stabilizer_words)
    elif isinstance(action, PeriodicShiftAction):
        reps, stabs, edges, assumed = _periodic_orbit_data(action, H, stabilizer_words)
    elif isinstance(action, CatalogAction):
        raise DomainError("catalog actions carry no orbit data for a presentation")
    else:
        raise DomainError(f"unsupported action type {type(action).__name__}")

    generators = _copy_generators(A, reps) + list(H.generators)
    relators = [_rename(rel, r) for r in reps for rel in A.relators]
    relators += list(H.relators)
    for r in reps:
        for w in stabs[r]:
            for a in A.generators:
                relators.append(commutator(gen(f"{a}_{r}"), w))
    for r, s, w in edges:
        for a in A.generators:
            for b in A.generators:
                relators.append(commutator(gen(f"{a}_{r}"), conjugate(w, gen(f"{b}_{s}"))))
    provenance = {
        "construction": "graph-wreath product",
        "theorem": "A, H finitely presented; finitely many orbits of vertices and edges; "
                   "finitely generated vertex stabilizers",
        "vertex_orbits": len(reps),
        "edge_orbits": len(edges),
    }
    if assumed:
        provenance["assumptions"] = ["supplied stabilizer words generate the vertex stabilizers"]
    try:
        return Presentation(generators, relators, provenance)
    except DomainError as exc:
        raise DomainError(f"generator names of A-copies and H must not collide: {exc}") from None

