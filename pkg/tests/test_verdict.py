import itertools

import pytest
from hypothesis import given, settings, strategies as st

from wreathlab.actions import ALL_NONZERO, INFINITE, FinitePermAction, PeriodicShiftAction
from wreathlab.errors import DomainError, InvariantError
from wreathlab.graphs import complete_graph, cycle_graph
from wreathlab.presentations import Presentation, gen
from wreathlab.verdict import (
    CONDITION_TEMPLATES, FinitenessType, InternalConsistencyError, classify, finite_group,
    free_abelian, houghton_complete_action, houghton_group, module_fp_status, polycyclic,
    presented, theorem_a_verdict, thompson_f, trivial_group,
)

SHIFT_EDGELESS = PeriodicShiftAction(["v"])
SHIFT_COMPLETE = PeriodicShiftAction(["v"], {("v", "v"): ALL_NONZERO})
EDGE_SWAP = FinitePermAction(complete_graph("uv"), [{"u": "v", "v": "u"}])
K4_SYM = FinitePermAction(complete_graph("abcd"), [{"a": "b", "b": "c", "c": "d", "d": "a"}, {"a": "b", "b": "a"}])
LADDER = PeriodicShiftAction(["u", "v"], {("u", "v"): [0, 1], ("u", "u"): [1]})
MIXED = PeriodicShiftAction(["u", "v"], {("u", "v"): ALL_NONZERO, ("v", "v"): [2]})


def test_module_fp_status_examples():
    assert module_fp_status(SHIFT_EDGELESS, 0, 7).status == "YES"
    assert module_fp_status(SHIFT_COMPLETE, 1, 0).status == "NO"
    assert module_fp_status(EDGE_SWAP, 1, INFINITE).status == "YES"
    assert module_fp_status(SHIFT_EDGELESS, 3, 2).status == "YES"  # no 4-cliques at all
    catalog = houghton_complete_action(3)
    assert module_fp_status(catalog, 0, 2).status == "YES"
    assert module_fp_status(catalog, 0, 3).status == "UNKNOWN"


def test_theorem_a_examples():
    for n in range(1, 6):
        assert theorem_a_verdict(free_abelian(1), free_abelian(1), SHIFT_EDGELESS, n).certified == n
    assert theorem_a_verdict(free_abelian(1), free_abelian(1), SHIFT_EDGELESS, INFINITE).certified == INFINITE
    assert theorem_a_verdict(houghton_group(3), free_abelian(1), SHIFT_EDGELESS, 2).certified == 2
    v = theorem_a_verdict(houghton_group(3), free_abelian(1), SHIFT_EDGELESS, 3)
    assert v.certified == 0 and v.refuted is None


def test_trivial_base_is_h():
    v = classify(trivial_group(), houghton_group(3), SHIFT_COMPLETE, 4)
    assert (v.certified, v.refuted) == (2, 3)
    assert v.rules_fired("CERTIFIED") == set() and v.trace[0].rule == "TrivialBase"


def test_baumslag_case():
    v = classify(finite_group(2), free_abelian(1), SHIFT_COMPLETE, 2)
    assert (v.certified, v.refuted) == (1, 2)
    assert "Theorem2.4" in v.rules_fired("REFUTED")
    assert "Lemma2.5" in v.rules_fired("CERTIFIED")
    cited = [e.condition for e in v.trace if e.rule == "Theorem2.4" and e.outcome == "NO"]
    assert cited == ["Gamma has finitely many orbits of vertices and edges"]


def test_finite_h_gives_f_infinity():
    for n in (1, 2, 5):
        v = classify(finite_group(2), finite_group(8), K4_SYM, n)
        assert (v.certified, v.refuted) == (INFINITE, INFINITE)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_houghton_corollary(n):
    v = classify(free_abelian(1), houghton_group(n), houghton_complete_action(n), n + 1)
    assert (v.certified, v.refuted) == (n - 1, n)


def test_unknown_without_a_rule():
    # finite abelianization, H not polycyclic, modules unknown above level 2
    A = presented(Presentation(["a"], [gen("a", 5)]))
    v = classify(A, thompson_f(), houghton_complete_action(3), 4)
    assert v.certified == 2 and v.refuted is None


def test_assumptions_propagate():
    A = presented(Presentation(["a", "b"], []), certified=INFINITE, refuted=INFINITE)
    v = classify(A, free_abelian(1), SHIFT_EDGELESS, 3)
    assert v.type.assumed and v.assumptions
    assert v.certified == INFINITE
    plain = classify(presented(Presentation(["a", "b"], [])), free_abelian(1), SHIFT_EDGELESS, 3)
    assert not plain.type.assumed and plain.certified == 2


def test_finiteness_type_invariants():
    with pytest.raises(DomainError):
        FinitenessType(3, 3)
    with pytest.raises(DomainError):
        FinitenessType(2, INFINITE)
    assert issubclass(InternalConsistencyError, InvariantError)
    t = FinitenessType(2, 4)
    assert [t.status(k) for k in (1, 2, 3, 4, 5)] == ["YES", "YES", "UNKNOWN", "NO", "NO"]


def test_json_shape():
    out = classify(free_abelian(1), houghton_group(3), houghton_complete_action(3), 4).to_json()
    assert out["certified"] == 2 and out["refuted"] == 3
    assert set(out) == {"subject", "certified", "refuted", "trace", "assumptions"}
    assert all({"rule", "condition", "n", "outcome"} <= set(e) for e in out["trace"])
    inf = classify(finite_group(2), finite_group(2), EDGE_SWAP, 1).to_json()
    assert inf["certified"] == "inf" and inf["refuted"] == "inf"


GROUPS_A = [trivial_group(), finite_group(2), free_abelian(1), free_abelian(2), polycyclic(),
            houghton_group(2), houghton_group(3), houghton_group(4), thompson_f(),
            presented(Presentation(["a"], [gen("a", 3)])),
            presented(Presentation(["a", "b"], []), certified=3, refuted=5)]
GROUPS_H = [trivial_group(), finite_group(6), free_abelian(1), polycyclic(), houghton_group(3), thompson_f()]
ACTIONS = [SHIFT_EDGELESS, SHIFT_COMPLETE, LADDER, MIXED, EDGE_SWAP, K4_SYM,
           houghton_complete_action(2), houghton_complete_action(4)]


def test_interval_monotonicity_full_catalog_grid():
    for A, H, action in itertools.product(GROUPS_A, GROUPS_H, ACTIONS):
        verdicts = [classify(A, H, action, n) for n in range(1, 7)]
        cert = max(v.certified for v in verdicts)
        refs = [v.refuted for v in verdicts if v.refuted is not None and v.refuted != INFINITE]
        if refs:
            assert cert < min(refs), (A, H, action)
        for small, big in zip(verdicts, verdicts[1:]):
            assert small.certified <= big.certified
            if small.refuted is not None and small.refuted != INFINITE:
                assert big.refuted == small.refuted
        for v in verdicts:
            assert all(e.condition in CONDITION_TEMPLATES for e in v.trace)


def test_theorem_a_never_refutes():
    for A, H, action in itertools.product(GROUPS_A, GROUPS_H, ACTIONS):
        for n in (1, 3):
            v = theorem_a_verdict(A, H, action, n)
            assert v.refuted is None and v.certified in (0, n)


def test_necessity_rules_ignore_presentation_details():
    # any non-trivial A of the same finiteness type yields the same refutations
    a1 = presented(Presentation(["a"], [gen("a", 2)]), nontrivial=True)
    a2 = presented(Presentation(["a", "b"], [gen("a", 3), gen("b", 3)]), nontrivial=True)
    for H, action in itertools.product(GROUPS_H, ACTIONS):
        r1 = classify(a1, H, action, 3)
        r2 = classify(a2, H, action, 3)
        assert (r1.refuted, r1.certified) == (r2.refuted, r2.certified)


offset_sets = st.one_of(st.just(ALL_NONZERO), st.sets(st.integers(-2, 2), max_size=2))


@settings(max_examples=40, deadline=None)
@given(st.dictionaries(st.tuples(st.sampled_from(["p", "q"]), st.sampled_from(["p", "q"])).filter(lambda t: t[0] <= t[1]),
                       offset_sets, max_size=3))
def test_theorems_c_and_d_agree_on_shifts(raw):
    offsets = {}
    for (a, b), v in raw.items():
        if v != ALL_NONZERO and a == b:
            v = sorted({abs(d) for d in v} - {0})
        offsets[(a, b)] = v
    action = PeriodicShiftAction(["p", "q"], offsets)
    v = classify(free_abelian(1), free_abelian(1), action, 4)
    for n in range(1, 5):
        c = [e.outcome for e in v.trace if e.rule == "TheoremC" and e.n == n and e.condition == "G is of type F_n"]
        d = [e.outcome for e in v.trace if e.rule == "TheoremD" and e.n == n and e.condition == "G is of type F_n"]
        assert c == d
