"""Group actions on graphs: clique orbits and clique stabilizers.

Three kinds of action are modelled:

* :class:`FinitePermAction` - a finite group given by vertex permutations of a
  finite graph. The group is enumerated by breadth-first closure.
* :class:`PeriodicShiftAction` - ``Z`` acting by translation on a graph with
  vertex set ``V0 x Z`` described by a finite template.
* :class:`CatalogAction` - an action known only through declared orbit and
  stabilizer facts (used for Houghton groups acting on finite subsets of
  their rays).
"""
from __future__ import annotations

import itertools
import json
import math
import os
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import DomainError, ParseError, ResourceCapError
from .graphs import SimpleGraph, enumerate_cliques

ALL_NONZERO = "ALL_NONZERO"
INFINITE = math.inf
DEFAULT_ELEMENT_CAP = 10080


def default_cap(fallback: int = DEFAULT_ELEMENT_CAP) -> int:
    """Resource cap, overridable through the ``WREATHLAB_CAP`` variable."""
    value = os.environ.get("WREATHLAB_CAP")
    if value is None:
        return fallback
    try:
        cap = int(value)
    except ValueError:
        raise DomainError(f"WREATHLAB_CAP must be an integer, got {value!r}") from None
    if cap <= 0:
        raise DomainError("WREATHLAB_CAP must be positive")
    return cap


@dataclass(frozen=True)
class Stabilizer:
    """Setwise stabilizer of a clique.

    ``kind`` is one of ``"trivial"``, ``"finite"`` (``generators`` and
    ``order`` given), ``"cyclic"`` (the subgroup ``index * Z`` of ``Z``) or
    ``"catalog"`` (only a certified finiteness level is known).
    """

    kind: str
    generators: tuple = ()
    order: int | None = None
    index: int | None = None
    certified: float = INFINITE
    source: str = ""

    @property
    def fp_level(self) -> float:
        """Largest ``n`` for which the stabilizer is known to be of type F_n."""
        if self.kind in ("trivial", "finite", "cyclic"):
            return INFINITE
        return self.certified

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        if self.kind == "finite":
            out["order"] = self.order
            out["generators"] = [dict(g) for g in self.generators]
        elif self.kind == "cyclic":
            out["index"] = self.index
        elif self.kind == "catalog":
            out["certified"] = "inf" if self.certified == INFINITE else self.certified
            out["source"] = self.source
        return out


TRIVIAL_STABILIZER = Stabilizer("trivial", order=1)


@dataclass(frozen=True)
class CliqueOrbitReport:
    dimension: int
    orbit_count: float
    representatives: tuple
    stabilizers: tuple

    @property
    def finite(self) -> bool:
        return self.orbit_count != INFINITE

    def to_json(self) -> dict:
        return {
            "p": self.dimension,
            "orbit_count": "INFINITE" if not self.finite else self.orbit_count,
            "representatives": [[_vertex_json(v) for v in c] for c in self.representatives],
            "stabilizers": [s.to_json() for s in self.stabilizers],
        }


def _vertex_json(v):
    return list(v) if isinstance(v, tuple) else v


# --------------------------------------------------------------------------
# finite permutation groups


class FinitePermAction:
    """A finite group acting on a finite graph by automorphisms.

    ``generators`` are mappings from vertices to vertices; vertices not
    mentioned are fixed. Group elements are tuples ``g`` with ``g[i]`` the
    index of the image of vertex ``i``.
    """

    def __init__(self, graph: SimpleGraph, generators: Sequence[Mapping] = (),
                 element_cap: int | None = None):
        self.graph = graph
        self.element_cap = default_cap() if element_cap is None else element_cap
        if self.element_cap <= 0:
            raise DomainError("element_cap must be positive")
        n = len(graph)
        perms = []
        for gen in generators:
            images = [graph.index(gen.get(v, v)) for v in graph.vertices]
            for v in gen:
                graph.index(v)
            if sorted(images) != list(range(n)):
                raise DomainError(f"generator is not a permutation of the vertices: {gen!r}")
            perm = tuple(images)
            for u, v in graph.edges:
                a, b = graph.vertices[perm[graph.index(u)]], graph.vertices[perm[graph.index(v)]]
                if not graph.adjacent(a, b):
                    raise DomainError(
                        f"each generator maps edges to edges: {gen!r} sends {(u, v)} to {(a, b)}"
                    )
            perms.append(perm)
        self.generators = tuple(perms)

    @property
    def identity(self) -> tuple:
        return tuple(range(len(self.graph)))

    @cached_property
    def _closure(self) -> tuple:
        identity = self.identity
        words = {identity: ()}
        order = [identity]
        queue = deque([identity])
        while queue:
            e = queue.popleft()
            for k, g in enumerate(self.generators):
                new = tuple(g[x] for x in e)
                if new not in words:
                    if len(order) >= self.element_cap:
                        raise ResourceCapError(
                            f"generated group exceeds element_cap={self.element_cap}"
                        )
                    words[new] = (k,) + words[e]
                    order.append(new)
                    queue.append(new)
        return tuple(order), words

    @property
    def elements(self) -> tuple:
        """All group elements in breadth-first order (identity first)."""
        return self._closure[0]

    def word_for(self, element: tuple) -> tuple:
        """Generator indices ``(k1, ..., km)`` with ``element = g_k1 ∘ ... ∘ g_km``."""
        return self._closure[1][element]

    def order(self) -> int:
        return len(self.elements)

    def apply(self, element: tuple, vertices: Iterable) -> tuple:
        g = self.graph
        return g.sort_vertices(g.vertices[element[g.index(v)]] for v in vertices)

    def as_mapping(self, element: tuple) -> dict:
        vs = self.graph.vertices
        return {vs[i]: vs[j] for i, j in enumerate(element) if i != j}

    def to_json(self) -> dict:
        return {
            "kind": "finite_perm",
            "graph": self.graph.to_json(),
            "generators": [self.as_mapping(g) for g in self.generators],
        }


def _compose(g: tuple, h: tuple) -> tuple:
    """``g ∘ h`` (apply ``h`` first)."""
    return tuple(g[x] for x in h)


def _subgroup_closure(gens: Sequence[tuple], identity: tuple) -> set:
    seen = {identity}
    queue = deque([identity])
    while queue:
        e = queue.popleft()
        for g in gens:
            new = _compose(g, e)
            if new not in seen:
                seen.add(new)
                queue.append(new)
    return seen


def stabilizer_elements(action: FinitePermAction, clique: tuple) -> tuple:
    """``(members, generators)`` of the setwise stabilizer of ``clique``.

    Generators are picked greedily in breadth-first element order, skipping
    elements already in the span of earlier picks.
    """
    target = set(clique)
    members = [e for e in action.elements if set(action.apply(e, clique)) == target]
    gens, span = [], {action.identity}
    for e in members:
        if e not in span:
            gens.append(e)
            span = _subgroup_closure(gens, action.identity)
    return members, gens


def _finite_stabilizer(action: FinitePermAction, clique: tuple) -> Stabilizer:
    members, gens = stabilizer_elements(action, clique)
    if len(members) == 1:
        return TRIVIAL_STABILIZER
    return Stabilizer(
        "finite",
        generators=tuple(tuple(action.as_mapping(g).items()) for g in gens),
        order=len(members),
    )


def _finite_orbits(action: FinitePermAction, p: int) -> CliqueOrbitReport:
    g = action.graph
    key = lambda c: tuple(g.index(v) for v in c)
    seen, reps = set(), []
    for clique in enumerate_cliques(g, p):
        if clique in seen:
            continue
        orbit = {action.apply(e, clique) for e in action.elements}
        seen |= orbit
        reps.append(min(orbit, key=key))
    reps.sort(key=key)
    return CliqueOrbitReport(p, len(reps), tuple(reps), tuple(_finite_stabilizer(action, r) for r in reps))


# --------------------------------------------------------------------------
# periodic graphs with a Z-shift


class PeriodicShiftAction:
    """``Z`` acting by ``(v, i) -> (v, i + 1)`` on a periodic graph.

    The vertex set is ``template x Z``. ``offsets`` maps a pair ``(x, y)`` of
    template vertices to the offsets ``d`` for which ``(x, i) ~ (y, i + d)``,
    or to :data:`ALL_NONZERO`. Pairs are stored in template order; a pair
    given in the opposite order has its offsets negated. Self-pairs are
    symmetric and may not contain ``0``.

    Vertices are ordered by ``(coordinate, template position)``.
    """

    def __init__(self, template: Sequence, offsets: Mapping = None):
        self.template = tuple(template)
        self._pos = {v: i for i, v in enumerate(self.template)}
        if len(self._pos) != len(self.template):
            raise DomainError("template vertices must be distinct")
        table = {}
        for pair, value in (offsets or {}).items():
            x, y = pair
            if x not in self._pos or y not in self._pos:
                raise DomainError(f"offset pair {pair!r} uses a vertex outside the template")
            flip = self._pos[x] > self._pos[y]
            key = (y, x) if flip else (x, y)
            if key in table:
                raise DomainError(f"offsets for pair {key!r} given twice")
            if value == ALL_NONZERO:
                table[key] = ALL_NONZERO
                continue
            ds = {int(d) for d in value}
            if x == y:
                if 0 in ds:
                    raise DomainError(f"self-pairs exclude offset 0: {pair!r}")
                ds = {abs(d) for d in ds}
            elif flip:
                ds = {-d for d in ds}
            if ds:
                table[key] = frozenset(ds)
        self.offsets = table

    @property
    def max_span(self) -> int:
        """Largest absolute finite offset (0 when there are none)."""
        return max(
            (abs(d) for v in self.offsets.values() if v != ALL_NONZERO for d in v), default=0
        )

    def key(self, vertex: tuple) -> tuple:
        v, i = vertex
        return (i, self._pos[v])

    def _pair(self, a: tuple, b: tuple):
        """Offset entry and normalized difference for two vertices."""
        (x, i), (y, j) = a, b
        if self._pos[x] > self._pos[y]:
            (x, i), (y, j) = (y, j), (x, i)
        entry = self.offsets.get((x, y))
        d = j - i
        if x == y:
            d = abs(d)
        return entry, d

    def adjacent(self, a: tuple, b: tuple) -> bool:
        if a == b:
            return False
        entry, d = self._pair(a, b)
        if entry is None:
            return False
        if entry == ALL_NONZERO:
            return d != 0
        return d in entry

    def is_clique(self, vertices: Sequence[tuple]) -> bool:
        return len(set(vertices)) == len(vertices) and all(
            self.adjacent(a, b) for a, b in itertools.combinations(vertices, 2)
        )

    def canonical(self, clique: Iterable[tuple]) -> tuple:
        """Sorted and translated so the least coordinate is 0."""
        clique = list(clique)
        if not clique:
            return ()
        low = min(i for _, i in clique)
        return tuple(sorted(((v, i - low) for v, i in clique), key=self.key))

    def window(self, width: int) -> list:
        return sorted(((v, i) for i in range(width + 1) for v in self.template), key=self.key)

    def cliques_in_window(self, p: int, width: int) -> list:
        """Canonical ``p``-cliques with coordinates in ``[0, width]`` and least coordinate 0."""
        verts = self.window(width)
        out = []

        def extend(clique, candidates):
            if len(clique) == p:
                out.append(clique)
                return
            for j, w in enumerate(candidates):
                extend(clique + (w,), [x for x in candidates[j + 1:] if self.adjacent(w, x)])

        for k, v in enumerate(verts):
            if v[1] != 0:
                break
            extend((v,), [w for w in verts[k + 1:] if self.adjacent(v, w)])
        return out

    def _type_sets(self, k: int) -> set:
        width = (k - 1) * (self.max_span + 1)
        return {frozenset(v for v, _ in c) for c in self.cliques_in_window(k, width)}

    def has_infinitely_many_orbits(self, p: int) -> bool:
        """Decide whether ``p``-cliques fall into infinitely many orbits.

        That happens exactly when some ``p``-clique splits into two non-empty
        cliques ``P`` and ``Q`` such that every template pair between them is
        :data:`ALL_NONZERO`: then ``Q`` can be pushed arbitrarily far away.
        Cliques can be compressed to gaps of at most ``max_span + 1`` without
        changing which template vertices they use, so the type sets below are
        complete.
        """
        if p < 2 or ALL_NONZERO not in self.offsets.values():
            return False
        free = {k for k, v in self.offsets.items() if v == ALL_NONZERO}

        def joined(x, y):
            return ((x, y) if self._pos[x] <= self._pos[y] else (y, x)) in free

        types = {k: self._type_sets(k) for k in range(1, p)}
        for k in range(1, p):
            for tp in types[k]:
                for tq in types[p - k]:
                    if all(joined(x, y) for x in tp for y in tq):
                        return True
        return False

    def max_clique_size(self) -> float:
        """Upper bound on clique sizes (``INFINITE`` when unbounded)."""
        bound = 0
        for v in self.template:
            entry = self.offsets.get((v, v))
            if entry == ALL_NONZERO:
                return INFINITE
            bound += 1 + (max(entry) if entry else 0)
        return bound

    def to_json(self) -> dict:
        return {
            "kind": "periodic_shift",
            "template": list(self.template),
            "offsets": {
                f"{x}|{y}": v if v == ALL_NONZERO else sorted(v) for (x, y), v in sorted(
                    self.offsets.items(), key=lambda kv: (self._pos[kv[0][0]], self._pos[kv[0][1]])
                )
            },
        }


def _periodic_orbits(action: PeriodicShiftAction, p: int) -> CliqueOrbitReport:
    if action.has_infinitely_many_orbits(p):
        return CliqueOrbitReport(p, INFINITE, (), ())
    reps = action.cliques_in_window(p, (p - 1) * action.max_span)
    return CliqueOrbitReport(p, len(reps), tuple(reps), (TRIVIAL_STABILIZER,) * len(reps))


# --------------------------------------------------------------------------
# actions known through catalog facts


@dataclass(frozen=True)
class CatalogAction:
    """An action described only by declared facts.

    Every ``p``-clique with ``p <= max_clique`` lies in one of
    ``orbit_count`` orbits and has a stabilizer of type
    ``F_{stabilizer_certified}``. ``representative(p)``, when given, returns
    an orbit representative for display.
    """

    description: str
    orbit_count: float
    stabilizer_certified: float
    max_clique: float = INFINITE
    source: str = ""
    representative: object = field(default=None, compare=False)

    def stabilizer(self) -> Stabilizer:
        return Stabilizer("catalog", certified=self.stabilizer_certified, source=self.source)


def _catalog_orbits(action: CatalogAction, p: int) -> CliqueOrbitReport:
    if p > action.max_clique:
        return CliqueOrbitReport(p, 0, (), ())
    count = action.orbit_count
    reps = ()
    if action.representative is not None and count != INFINITE:
        reps = tuple(action.representative(p, k) for k in range(int(count)))
    stabs = (action.stabilizer(),) * (len(reps) if reps else (0 if count == INFINITE else int(count)))
    return CliqueOrbitReport(p, count, reps, stabs)


# --------------------------------------------------------------------------
# public operations


def clique_orbits(action, p: int) -> CliqueOrbitReport:
    """Orbit decomposition of the ``p``-cliques under ``action``."""
    if p < 1:
        raise DomainError(f"p ≥ 1 required, got {p}")
    if isinstance(action, FinitePermAction):
        return _finite_orbits(action, p)
    if isinstance(action, PeriodicShiftAction):
        return _periodic_orbits(action, p)
    if isinstance(action, CatalogAction):
        return _catalog_orbits(action, p)
    raise DomainError(f"unsupported action type {type(action).__name__}")


def stabilizer_of_clique(action, clique: Sequence) -> Stabilizer:
    """Setwise stabilizer of ``clique``."""
    clique = tuple(clique)
    if isinstance(action, FinitePermAction):
        g = action.graph
        if not clique or not g.is_clique(list(clique)):
            raise DomainError(f"clique is a clique of the action's graph: {clique!r} is not")
        return _finite_stabilizer(action, g.sort_vertices(clique))
    if isinstance(action, PeriodicShiftAction):
        clique = tuple((v, int(i)) for v, i in clique)
        if not clique or any(v not in action._pos for v, _ in clique) or not action.is_clique(clique):
            raise DomainError(f"clique is a clique of the action's graph: {clique!r} is not")
        return TRIVIAL_STABILIZER
    if isinstance(action, CatalogAction):
        return action.stabilizer()
    raise DomainError(f"unsupported action type {type(action).__name__}")


def cocompact_skeleton(action, k: int) -> bool:
    """True iff there are finitely many orbits of ``p``-cliques for ``1 <= p <= k + 1``."""
    if k < 0:
        raise DomainError(f"k must be non-negative, got {k}")
    if isinstance(action, FinitePermAction):
        return True
    return all(clique_orbits(action, p).finite for p in range(1, k + 2))


def max_clique_size(action) -> float:
    """Upper bound on clique sizes; beyond it there are no cliques at all."""
    if isinstance(action, FinitePermAction):
        p = 0
        while enumerate_cliques(action.graph, p + 1):
            p += 1
        return p
    if isinstance(action, PeriodicShiftAction):
        return action.max_clique_size()
    return action.max_clique


# --------------------------------------------------------------------------
# JSON


def action_from_json(data: dict):
    kind = data.get("kind") if isinstance(data, dict) else None
    try:
        if kind == "finite_perm":
            graph = SimpleGraph.from_json(data["graph"])
            return FinitePermAction(graph, data.get("generators", []), data.get("element_cap"))
        if kind == "periodic_shift":
            offsets = {}
            for k, v in data.get("offsets", {}).items():
                parts = k.split("|")
                if len(parts) != 2:
                    raise ParseError(f'offset key must have the form "x|y": {k!r}')
                if v != ALL_NONZERO and not isinstance(v, list):
                    raise ParseError(f"offsets must be a list or {ALL_NONZERO!r}: {v!r}")
                offsets[tuple(parts)] = v
            return PeriodicShiftAction(data["template"], offsets)
    except KeyError as exc:
        raise ParseError(f"action file is missing {exc.args[0]!r}") from None
    except DomainError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc)) from None
    raise ParseError(f'action kind must be "finite_perm" or "periodic_shift", got {kind!r}')


def load_action(path):
    with open(path) as fh:
        return action_from_json(json.load(fh))
