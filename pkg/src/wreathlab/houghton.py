"""Houghton's groups: eventually-translational permutations of ``n`` rays.

A point of ``R_n`` is a pair ``(ray, position)`` with ``1 <= ray <= n`` and
``position >= 1``. An element is stored as its translation vector ``t`` and a
finite correction table; every point outside the table moves by
``(i, k) -> (i, k + t[i-1])``.
"""
from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .actions import default_cap
from .errors import DomainError, InvariantError, ParseError

DEFAULT_SEARCH_CAP = 10 ** 5

RayPoint = tuple  # (ray, position)


def _check_point(n: int, x) -> RayPoint:
    ray, pos = x
    if not (isinstance(ray, int) and isinstance(pos, int)) or not 1 <= ray <= n or pos < 1:
        raise DomainError(f"ray point {x!r} outside R_{n}")
    return (ray, pos)


@dataclass(frozen=True)
class HoughtonElement:
    n: int
    t: tuple
    correction: tuple  # sorted ((point, image), ...) pairs, pruned

    def __init__(self, n: int, t: Iterable[int], correction: dict | Iterable = ()):
        t = tuple(int(x) for x in t)
        if n < 1 or len(t) != n:
            raise DomainError(f"translation vector must have length n={n}")
        if sum(t) != 0:
            raise DomainError(f"translations must sum to zero: {t}")
        items = correction.items() if isinstance(correction, dict) else correction
        table = {}
        for x, y in items:
            x, y = _check_point(n, tuple(x)), _check_point(n, tuple(y))
            if (x[0], x[1] + t[x[0] - 1]) != y:
                table[x] = y
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "correction", tuple(sorted(table.items())))
        self._verify()

    @property
    def table(self) -> dict:
        return dict(self.correction)

    @property
    def span(self) -> int:
        """Largest position appearing in the correction (domain or image)."""
        return max((max(x[1], y[1]) for x, y in self.correction), default=0)

    @property
    def window(self) -> int:
        return self.span + max((abs(s) for s in self.t), default=0) + 2

    def __call__(self, x: RayPoint) -> RayPoint:
        return act(self, x)

    def _verify(self):
        """Windowed bijectivity: injective on the window and onto its first
        ``span + 1`` positions. With zero total translation this is
        equivalent to being a bijection of ``R_n``."""
        W = self.window
        images = {}
        for ray in range(1, self.n + 1):
            for pos in range(1, W + 1):
                y = self._raw(ray, pos)
                if y[1] < 1:
                    raise DomainError(f"point {(ray, pos)} is sent off the rays to {y}")
                if y in images:
                    raise DomainError(f"not injective: {images[y]} and {(ray, pos)} both map to {y}")
                images[y] = (ray, pos)
        for ray in range(1, self.n + 1):
            for pos in range(1, self.span + 2):
                if (ray, pos) not in images:
                    raise DomainError(f"not surjective: {(ray, pos)} has no preimage")

    def _raw(self, ray: int, pos: int) -> RayPoint:
        y = self.table.get((ray, pos))
        return y if y is not None else (ray, pos + self.t[ray - 1])

    def inverse(self) -> "HoughtonElement":
        W = self.window + self.span
        table = {}
        for ray in range(1, self.n + 1):
            for pos in range(1, W + 1):
                y = self._raw(ray, pos)
                table[y] = (ray, pos)
        return HoughtonElement(self.n, [-s for s in self.t], {y: x for y, x in table.items() if y[1] <= W - max(map(abs, self.t), default=0)})

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "t": list(self.t),
            "correction": {f"{x[0]},{x[1]}": f"{y[0]},{y[1]}" for x, y in self.correction},
        }

    @classmethod
    def from_json(cls, data: dict) -> "HoughtonElement":
        try:
            corr = {}
            for k, v in data.get("correction", {}).items():
                corr[tuple(int(s) for s in k.split(","))] = tuple(int(s) for s in v.split(","))
            return cls(int(data["n"]), data["t"], corr)
        except (KeyError, ValueError, TypeError, AttributeError) as exc:
            raise ParseError(f"malformed Houghton element: {exc}") from None
        except DomainError as exc:
            raise ParseError(str(exc)) from None


def load_element(path) -> HoughtonElement:
    with open(path) as fh:
        return HoughtonElement.from_json(json.load(fh))


def identity(n: int) -> HoughtonElement:
    return HoughtonElement(n, [0] * n)


def act(g: HoughtonElement, x: RayPoint) -> RayPoint:
    ray, pos = _check_point(g.n, tuple(x))
    return g._raw(ray, pos)


def compose(g: HoughtonElement, h: HoughtonElement) -> HoughtonElement:
    """``g ∘ h``: apply ``h`` first."""
    if g.n != h.n:
        raise DomainError(f"equal ray_count required: {g.n} vs {h.n}")
    # beyond W both maps translate and h's image stays beyond g's correction
    W = g.window + h.window
    t = [a + b for a, b in zip(g.t, h.t)]
    table = {}
    for ray in range(1, g.n + 1):
        for pos in range(1, W + 1):
            table[(ray, pos)] = g._raw(*h._raw(ray, pos))
    try:
        return HoughtonElement(g.n, t, table)
    except DomainError as exc:
        raise InvariantError(f"composition is not a bijection: {exc}") from None


def generator(n: int, i: int, j: int) -> HoughtonElement:
    """Translate ray ``i`` down and ray ``j`` up, sending ``(i, 1)`` to ``(j, 1)``."""
    if i == j or not (1 <= i <= n and 1 <= j <= n):
        raise DomainError(f"generator needs two distinct rays in 1..{n}")
    t = [0] * n
    t[i - 1], t[j - 1] = -1, 1
    return HoughtonElement(n, t, {(i, 1): (j, 1)})


def standard_generators(n: int) -> list:
    """One generator per ordered pair of rays; the set is closed under inverses.

    For ``n = 2`` the two pair generators only produce translations, so the
    transposition of ``(1, 1)`` and ``(1, 2)`` is added to generate ``H_2``.
    """
    gens = [generator(n, i, j) for i, j in itertools.permutations(range(1, n + 1), 2)]
    if n == 2:
        gens.append(HoughtonElement(2, [0, 0], {(1, 1): (1, 2), (1, 2): (1, 1)}))
    return gens


def _apply_set(g: HoughtonElement, points: frozenset) -> frozenset:
    return frozenset(g._raw(*x) for x in points)


def _search(n: int, source: frozenset, targets: set, cap: int) -> dict:
    """Breadth-first search over generator words acting on ``source``.

    Returns ``{target: word}`` for the targets reached before ``cap`` states
    were visited.
    """
    gens = standard_generators(n)
    parent = {source: None}
    queue = deque([source])
    found = {}
    if source in targets:
        found[source] = ()
    while queue and len(found) < len(targets):
        state = queue.popleft()
        for k, g in enumerate(gens):
            nxt = _apply_set(g, state)
            if nxt in parent:
                continue
            if len(parent) >= cap:
                queue.clear()
                break
            parent[nxt] = (state, k)
            if nxt in targets:
                word, s = [], nxt
                while parent[s] is not None:
                    s, step = parent[s]
                    word.append(step)
                found[nxt] = tuple(word)  # last generator applied comes first
            queue.append(nxt)
    elements = {}
    for target, word in found.items():
        e = identity(n)
        for k in reversed(word):
            e = compose(gens[k], e)
        elements[target] = e
    return elements


NOT_FOUND = None


def transitivity_witness(n: int, source: Iterable, target: Iterable, search_cap: int | None = None):
    """An element mapping ``source`` onto ``target`` setwise, or ``NOT_FOUND``.

    ``NOT_FOUND`` only means the search cap was exhausted.
    """
    cap = default_cap(DEFAULT_SEARCH_CAP) if search_cap is None else search_cap
    if cap <= 0:
        raise DomainError(f"search cap must be positive, got {cap}")
    if n < 2:
        raise DomainError("n ≥ 2 required")
    src = frozenset(_check_point(n, tuple(x)) for x in source)
    dst = frozenset(_check_point(n, tuple(x)) for x in target)
    if len(src) != len(dst):
        raise DomainError("|source| = |target| required")
    return _search(n, src, {dst}, cap).get(dst, NOT_FOUND)


def transitivity_witnesses(n: int, source: Iterable, targets: Iterable, search_cap: int | None = None) -> dict:
    """Witnesses from one ``source`` to many targets, sharing a single search.

    Targets not reached within the cap are absent from the result.
    """
    cap = default_cap(DEFAULT_SEARCH_CAP) if search_cap is None else search_cap
    if cap <= 0:
        raise DomainError(f"search cap must be positive, got {cap}")
    src = frozenset(_check_point(n, tuple(x)) for x in source)
    wanted = {frozenset(_check_point(n, tuple(x)) for x in t) for t in targets}
    if any(len(t) != len(src) for t in wanted):
        raise DomainError("|source| = |target| required")
    return _search(n, src, wanted, cap)


def render_window(g: HoughtonElement, width: int) -> str:
    """Table of ``g`` on positions ``1..width`` of every ray."""
    lines = []
    for ray in range(1, g.n + 1):
        cells = [f"{pos}->{act(g, (ray, pos))[0]}.{act(g, (ray, pos))[1]}" for pos in range(1, width + 1)]
        lines.append(f"ray {ray}: " + "  ".join(cells))
    return "\n".join(lines)
