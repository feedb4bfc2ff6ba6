"""Finiteness-type decisions for graph-wreath products ``G = A ≀_Γ H``.

Facts about ``A`` and ``H`` come from a small catalog (or from user
assertions, which are flagged as assumptions). Facts about the action come
from :mod:`wreathlab.actions`. The engine combines the known sufficient and
necessary criteria level by level and reports the interval it can justify;
anything it cannot justify stays UNKNOWN.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .actions import (
    INFINITE, CatalogAction, FinitePermAction, PeriodicShiftAction, clique_orbits,
    max_clique_size,
)
from .errors import DomainError, InvariantError, ParseError
from .graphs import SimpleGraph, load_graph
from .presentations import Presentation, abelianization, cyclic_group, load_presentation

YES, NO, UNKNOWN = "YES", "NO", "UNKNOWN"
CERTIFIED, REFUTED, NO_CONCLUSION = "CERTIFIED", "REFUTED", "NO_CONCLUSION"


class InternalConsistencyError(InvariantError):
    """Certified and refuted bounds overlap; the rules or their inputs disagree."""


# fixed wording of every condition a trace entry may cite
CONDITIONS = {
    "trivial_base": "A is trivial, so G = H",
    "nontrivial": "A is non-trivial",
    "fg": "A and H are finitely generated",
    "fp": "A and H are finitely presented",
    "vertex_orbits": "Gamma has finitely many orbits of vertices",
    "edge_orbits": "Gamma has finitely many orbits of vertices and edges",
    "vertex_stabilizers": "each vertex of Gamma has finitely generated stabilizer",
    "A_Fn": "A is of type F_n",
    "H_Fn": "H is of type F_n",
    "module": "ZΔ_p is of type FP_{n-1-p}",
    "polycyclic": "H is polycyclic-by-finite",
    "cocompact": "H acts cocompactly on the (n-1)-skeleton of L",
    "infinite_ab": "A has infinite abelianization",
    "n_ge_3": "n ≥ 3",
    "cell_stabilizers": "stabilizers of p-cells of L are of type FP_{n-1-p}",
    "orbits_m": "finitely many orbits of (m+1)-cliques",
    "stabilizers_m": "the stabilizer of each (m+1)-clique has type FP_n",
    "no_cliques_m": "there are no (m+1)-cliques",
    "conclusion": "G is of type F_n",
    "conclusion_all": "G is of type F_n for every n",
}
CONDITION_TEMPLATES = frozenset(CONDITIONS.values())


def _level_json(x):
    if x is None:
        return None
    return "inf" if x == INFINITE else int(x)


def _level_from_json(x):
    if x is None:
        return None
    if x in ("inf", "INFINITE"):
        return INFINITE
    if isinstance(x, int) and x >= 0:
        return x
    raise ParseError(f'finiteness level must be a non-negative integer, "inf" or null: {x!r}')


def _all(statuses) -> str:
    statuses = list(statuses)
    if NO in statuses:
        return NO
    if UNKNOWN in statuses:
        return UNKNOWN
    return YES


@dataclass(frozen=True)
class FinitenessType:
    """``certified``: largest ``n`` with type F_n established (``inf`` allowed).
    ``refuted``: least ``n`` with type F_n disproved, ``inf`` for never, or
    ``None`` for UNKNOWN."""

    certified: float = 0
    refuted: float | None = None
    assumed: bool = False

    def __post_init__(self):
        if self.certified < 0:
            raise DomainError(f"certified level must be non-negative, got {self.certified}")
        if self.refuted is not None:
            if self.refuted == INFINITE:
                if self.certified != INFINITE:
                    raise DomainError("refuted = never requires certified = inf")
            elif self.refuted < 1 or self.certified >= self.refuted:
                raise DomainError(
                    f"certified < refuted required: certified {self.certified}, refuted {self.refuted}"
                )

    def status(self, k: float) -> str:
        """YES / NO / UNKNOWN for type F_k."""
        if k <= self.certified:
            return YES
        if self.refuted is not None and k >= self.refuted:
            return NO
        return UNKNOWN

    def to_json(self) -> dict:
        return {"certified": _level_json(self.certified), "refuted": _level_json(self.refuted),
                "assumed": self.assumed}


F_INFINITY = FinitenessType(INFINITE, INFINITE)


@dataclass(frozen=True)
class GroupSpec:
    tag: str
    label: str
    finiteness: FinitenessType
    nontrivial: bool | None
    polycyclic_by_finite: bool
    ab_rank: int | None
    presentation: Presentation | None = field(default=None, compare=False)

    def __str__(self):
        return self.label

    @property
    def assumptions(self) -> list:
        if not self.finiteness.assumed:
            return []
        t = self.finiteness
        return [f"{self.label}: asserted certified F_{_level_json(t.certified)}, "
                f"refuted {_level_json(t.refuted)}"]


def trivial_group() -> GroupSpec:
    return GroupSpec("TRIVIAL", "1", F_INFINITY, False, True, 0, Presentation([], []))


def finite_group(order: int | None = None) -> GroupSpec:
    if order is not None and order < 1:
        raise DomainError(f"group order must be positive, got {order}")
    if order == 1:
        return trivial_group()
    pres = cyclic_group(order) if order else None
    label = f"C{order}" if order else "finite"
    return GroupSpec("FINITE", label, F_INFINITY, True, True, 0, pres)


def free_abelian(k: int) -> GroupSpec:
    if k < 0:
        raise DomainError(f"rank must be non-negative, got {k}")
    if k == 0:
        return trivial_group()
    gens = [f"x{i}" for i in range(1, k + 1)] if k > 1 else ["x"]
    rels = [((a, 1), (b, 1), (a, -1), (b, -1)) for i, a in enumerate(gens) for b in gens[i + 1:]]
    return GroupSpec("FREE_ABELIAN", "Z" if k == 1 else f"Z^{k}", F_INFINITY, True, True, k,
                     Presentation(gens, rels))


def polycyclic(ab_rank: int | None = None) -> GroupSpec:
    """A non-trivial polycyclic-by-finite group; ``ab_rank`` when known."""
    return GroupSpec("POLYCYCLIC", "polycyclic", F_INFINITY, True, True, ab_rank)


def houghton_group(n: int) -> GroupSpec:
    """Type F_{n-1} but not F_n; abelianization of rank ``n - 1`` for ``n ≥ 2``."""
    if n < 1:
        raise DomainError(f"n ≥ 1 required, got {n}")
    return GroupSpec("HOUGHTON", f"H_{n}", FinitenessType(n - 1, n), True, False, n - 1)


def thompson_f() -> GroupSpec:
    return GroupSpec("THOMPSON_F", "F", F_INFINITY, True, False, 2)


def raag(graph: SimpleGraph) -> GroupSpec:
    from .presentations import free_group, graph_product_presentation

    pres = graph_product_presentation(graph, free_group("x"))
    n = len(graph)
    return GroupSpec("RAAG", f"RAAG({n} vertices)", F_INFINITY, n > 0, False, n, pres)


def presented(P: Presentation, certified=None, refuted=None, nontrivial: bool | None = None) -> GroupSpec:
    """A finitely presented group. Without assertions it is certified F_2
    (the presentation itself) and nothing more; asserted levels are assumptions."""
    rank = abelianization(P).betti
    if nontrivial is None:
        nontrivial = True if not abelianization(P).is_trivial else None
    if certified is None and refuted is None:
        ft = FinitenessType(2)
    else:
        cert = max(2, certified if certified is not None else 2)
        ft = FinitenessType(cert, refuted, assumed=True)
    return GroupSpec("PRESENTED", "presented", ft, nontrivial, False, rank, P)


def parse_group_spec(text: str) -> GroupSpec:
    """``catalog:<name>`` or a path to a presentation JSON file.

    Catalog names: ``1``/``trivial``, ``Z``, ``Z^k``, ``Ck``, ``finite``,
    ``polycyclic``, ``Hn`` (Houghton), ``F`` (Thompson), ``raag:<graph.json>``.
    A presentation file may carry ``"finiteness": {"certified": .., "refuted": ..}``
    and ``"nontrivial": true``.
    """
    if text.startswith("catalog:"):
        name = text[len("catalog:"):]
        try:
            if name in ("1", "trivial"):
                return trivial_group()
            if name == "Z":
                return free_abelian(1)
            if name.startswith("Z^"):
                return free_abelian(int(name[2:]))
            if name == "finite":
                return finite_group()
            if name.startswith("C"):
                return finite_group(int(name[1:]))
            if name == "polycyclic":
                return polycyclic()
            if name.startswith("H"):
                return houghton_group(int(name[1:]))
            if name == "F":
                return thompson_f()
            if name.startswith("raag:"):
                return raag(load_graph(name[5:]))
        except ValueError:
            pass
        raise ParseError(f"unknown catalog group {name!r}")
    with open(text) as fh:
        data = json.load(fh)
    P = Presentation.from_json(data)
    fin = data.get("finiteness") or {}
    return presented(P, _level_from_json(fin.get("certified")), _level_from_json(fin.get("refuted")),
                     data.get("nontrivial"))


def houghton_complete_action(n: int) -> CatalogAction:
    """``H_n`` on the complete graph on ``R_n``: transitive on ``p``-subsets for
    every ``p``, with stabilizers of type F_{n-1}."""
    if n < 2:
        raise DomainError(f"n ≥ 2 required, got {n}")
    return CatalogAction(
        description=f"H_{n} on the complete graph on R_{n}",
        orbit_count=1,
        stabilizer_certified=n - 1,
        source=f"stabilizers of finite subsets of R_{n} are of type F_{n - 1}",
        representative=lambda p, k: tuple((1, i) for i in range(1, p + 1)),
    )


# --------------------------------------------------------------------------
# trace


@dataclass(frozen=True)
class TraceEntry:
    rule: str
    condition: str
    n: object
    p: int | None
    outcome: str

    def to_json(self) -> dict:
        out = {"rule": self.rule, "condition": self.condition, "n": _level_json(self.n)}
        if self.p is not None:
            out["p"] = self.p
        out["outcome"] = self.outcome
        return out


def _entry(rule, key, n, outcome, p=None) -> TraceEntry:
    return TraceEntry(rule, CONDITIONS[key], n, p, outcome)


@dataclass(frozen=True)
class ModuleStatus:
    status: str
    trace: tuple


@dataclass(frozen=True)
class FinitenessVerdict:
    subject: str
    type: FinitenessType
    trace: tuple
    assumptions: tuple = ()

    @property
    def certified(self):
        return self.type.certified

    @property
    def refuted(self):
        return self.type.refuted

    def rules_fired(self, outcome: str) -> set:
        return {e.rule for e in self.trace if e.condition in (CONDITIONS["conclusion"], CONDITIONS["conclusion_all"])
                and e.outcome == outcome}

    def to_json(self) -> dict:
        return {
            "subject": self.subject,
            "certified": _level_json(self.type.certified),
            "refuted": _level_json(self.type.refuted),
            "trace": [e.to_json() for e in self.trace],
            "assumptions": list(self.assumptions),
        }


# --------------------------------------------------------------------------
# facts about the action


def _stabilizer_status(action, size: int, level: float) -> str:
    """Whether every ``size``-clique stabilizer is of type F_level (or FP_level)."""
    if isinstance(action, (FinitePermAction, PeriodicShiftAction)):
        return YES  # finite groups and the trivial group are of type F_∞
    if isinstance(action, CatalogAction):
        if size > action.max_clique:
            return YES
        return YES if action.stabilizer_certified >= level else UNKNOWN
    return UNKNOWN


def _has_cliques(action, size: int) -> bool:
    return size <= max_clique_size(action)


def _orbits_finite(action, size: int) -> str:
    if not _has_cliques(action, size):
        return YES
    return YES if clique_orbits(action, size).finite else NO


def module_fp_status(action, m: int, n: float) -> ModuleStatus:
    """Is ``ZΔ_m`` of type FP_n over ``ZH``? It is iff there are finitely many
    orbits of ``(m+1)``-cliques, each with stabilizer of type FP_n."""
    if m < 0:
        raise DomainError(f"m must be non-negative, got {m}")
    rule = "Lemma1.7"
    if not _has_cliques(action, m + 1):
        return ModuleStatus(YES, (_entry(rule, "no_cliques_m", n, YES, m),))
    report = clique_orbits(action, m + 1)
    if not report.finite:
        return ModuleStatus(NO, (_entry(rule, "orbits_m", n, NO, m),))
    trace = [_entry(rule, "orbits_m", n, YES, m)]
    if isinstance(action, CatalogAction):
        stab = _stabilizer_status(action, m + 1, n)
    else:
        stab = _all(YES if s.fp_level >= n else UNKNOWN for s in report.stabilizers)
    trace.append(_entry(rule, "stabilizers_m", n, stab, m))
    return ModuleStatus(stab, tuple(trace))


def _modules(action, n: float, rule: str, trace: list) -> str:
    """Condition (iii): ``ZΔ_p`` of type FP_{n-1-p} for ``0 ≤ p ≤ n-1``."""
    if n == INFINITE:
        top = max_clique_size(action)
        if top == INFINITE:
            trace.append(_entry(rule, "module", n, UNKNOWN))
            return UNKNOWN
        ps = range(int(top))
    else:
        ps = range(int(n))
    out = []
    for p in ps:
        s = module_fp_status(action, p, n - 1 - p if n != INFINITE else INFINITE).status
        trace.append(_entry(rule, "module", n, s, p))
        out.append(s)
        if s == NO:
            break
    return _all(out)


def _cocompact(action, n: float) -> str:
    """Finitely many orbits of ``p``-cliques for ``1 ≤ p ≤ n``."""
    if n == INFINITE:
        top = max_clique_size(action)
        if top == INFINITE:
            return UNKNOWN
        n = top
    return _all(_orbits_finite(action, p) for p in range(1, int(n) + 1))


def theorem_a_verdict(A: GroupSpec, H: GroupSpec, action, n: float) -> FinitenessVerdict:
    """Sufficient conditions only: certifies F_n or stays silent."""
    trace = []
    ok = _theorem_a(A, H, action, n, trace)
    cert = n if ok else 0
    ft = FinitenessType(INFINITE, INFINITE) if ok and n == INFINITE else FinitenessType(cert)
    return FinitenessVerdict(_subject(A, H, action), ft, tuple(trace), tuple(A.assumptions + H.assumptions))


def _theorem_a(A, H, action, n, trace) -> bool:
    rule = "TheoremA"
    a, h = A.finiteness.status(n), H.finiteness.status(n)
    trace.append(_entry(rule, "H_Fn", n, h))
    trace.append(_entry(rule, "A_Fn", n, a))
    mods = _modules(action, n, rule, trace) if a == YES and h == YES else UNKNOWN
    ok = a == YES and h == YES and mods == YES
    key = "conclusion_all" if n == INFINITE else "conclusion"
    trace.append(_entry(rule, key, n, CERTIFIED if ok else NO_CONCLUSION))
    return ok


def _subject(A, H, action) -> str:
    if isinstance(action, CatalogAction):
        desc = action.description
    elif isinstance(action, FinitePermAction):
        desc = f"finite action on {len(action.graph)} vertices"
    elif isinstance(action, PeriodicShiftAction):
        desc = f"shift action on {len(action.template)} x Z"
    else:
        desc = type(action).__name__
    return f"{A} wr_Gamma {H} ({desc})"


# --------------------------------------------------------------------------
# the combined engine


def _conclude(rule, n, cert_ok, refute, trace, certs, refs):
    outcome = REFUTED if refute else CERTIFIED if cert_ok else NO_CONCLUSION
    trace.append(_entry(rule, "conclusion", n, outcome))
    if refute:
        refs.append(n)
    elif cert_ok:
        certs.append(n)


def classify(A: GroupSpec, H: GroupSpec, action, n: int) -> FinitenessVerdict:
    """Best interval for the finiteness type of ``A ≀_Γ H`` using levels ``1..n``.

    F_∞ is certified separately whenever the sufficient conditions hold in
    every degree, which is decidable when cliques have bounded size.
    """
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"n ≥ 1 required, got {n!r}")
    subject = _subject(A, H, action)
    assumptions = tuple(A.assumptions + H.assumptions)
    trace, certs, refs = [], [0], []

    if A.nontrivial is False:
        trace.append(_entry("TrivialBase", "trivial_base", n, YES))
        return FinitenessVerdict(subject, H.finiteness, tuple(trace), assumptions)

    nontrivial = A.nontrivial is True
    trace.append(_entry("Standing", "nontrivial", n, YES if nontrivial else UNKNOWN))
    fa, fh = A.finiteness, H.finiteness

    for k in range(1, n + 1):
        if k == 1:
            rule = "Lemma2.5"
            groups = _all([fa.status(1), fh.status(1)])
            orbits = _orbits_finite(action, 1)
            trace.append(_entry(rule, "fg", k, groups))
            trace.append(_entry(rule, "vertex_orbits", k, orbits))
            _conclude(rule, k, _all([groups, orbits]) == YES,
                      nontrivial and NO in (groups, orbits), trace, certs, refs)
        if k == 2:
            rule = "Theorem2.4"
            groups = _all([fa.status(2), fh.status(2)])
            orbits = _all([_orbits_finite(action, 1), _orbits_finite(action, 2)])
            stabs = _stabilizer_status(action, 1, 1)
            trace.append(_entry(rule, "fp", k, groups))
            trace.append(_entry(rule, "edge_orbits", k, orbits))
            trace.append(_entry(rule, "vertex_stabilizers", k, stabs))
            _conclude(rule, k, _all([groups, orbits, stabs]) == YES,
                      nontrivial and NO in (groups, orbits, stabs), trace, certs, refs)

        if _theorem_a(A, H, action, k, trace):
            certs.append(k)

        if k >= 3 and nontrivial:
            rule = "TheoremB"
            trace.append(_entry(rule, "n_ge_3", k, YES))
            hyp = []
            for p in range(k - 1):
                s = _stabilizer_status(action, p + 1, k - 1 - p)
                trace.append(_entry(rule, "cell_stabilizers", k, s, p))
                hyp.append(s)
            if _all(hyp) == YES:
                a, h, cc = fa.status(k), fh.status(k), _cocompact(action, k)
                trace.append(_entry(rule, "A_Fn", k, a))
                trace.append(_entry(rule, "H_Fn", k, h))
                trace.append(_entry(rule, "cocompact", k, cc))
                _conclude(rule, k, False, NO in (a, h, cc), trace, certs, refs)
            else:
                _conclude(rule, k, False, False, trace, certs, refs)

        if H.polycyclic_by_finite and nontrivial:
            rule = "TheoremD"
            trace.append(_entry(rule, "polycyclic", k, YES))
            a, cc = fa.status(k), _cocompact(action, k)
            trace.append(_entry(rule, "A_Fn", k, a))
            trace.append(_entry(rule, "cocompact", k, cc))
            _conclude(rule, k, _all([a, cc]) == YES, NO in (a, cc), trace, certs, refs)

        if A.ab_rank:
            rule = "TheoremC"
            trace.append(_entry(rule, "infinite_ab", k, YES))
            a, h = fa.status(k), fh.status(k)
            trace.append(_entry(rule, "H_Fn", k, h))
            trace.append(_entry(rule, "A_Fn", k, a))
            mods = _modules(action, k, rule, trace)
            _conclude(rule, k, _all([a, h, mods]) == YES, NO in (a, h, mods), trace, certs, refs)

    refuted = min(refs) if refs else None
    certified = max(certs)
    if refuted is None or refuted == INFINITE:
        if _theorem_a(A, H, action, INFINITE, trace):
            certified, refuted = INFINITE, INFINITE
        elif H.polycyclic_by_finite and nontrivial and fa.status(INFINITE) == YES \
                and _cocompact(action, INFINITE) == YES:
            trace.append(_entry("TheoremD", "conclusion_all", INFINITE, CERTIFIED))
            certified, refuted = INFINITE, INFINITE
    if refuted is not None and certified >= refuted and refuted != INFINITE:
        raise InternalConsistencyError(
            f"certified F_{certified} but refuted F_{refuted} for {subject}"
        )
    if refuted is not None and refuted != INFINITE and certified == INFINITE:
        raise InternalConsistencyError(f"certified F_inf but refuted F_{refuted} for {subject}")
    assumed = bool(assumptions)
    return FinitenessVerdict(subject, FinitenessType(certified, refuted, assumed), tuple(trace), assumptions)
