"""Three-valued finiteness verdicts with the rule trace that produced them."""
from wreathlab import PeriodicShiftAction, classify
from wreathlab.actions import ALL_NONZERO
from wreathlab.verdict import finite_group, free_abelian, houghton_complete_action, houghton_group

shift = PeriodicShiftAction(["v"], {("v", "v"): ALL_NONZERO})
v = classify(finite_group(2), free_abelian(1), shift, 3)
print(v.subject, "certified", v.certified, "refuted", v.refuted)
for entry in v.trace:
    print("  ", entry.rule, entry.n, entry.outcome, "-", entry.condition)

for n in (2, 3, 4):
    v = classify(free_abelian(1), houghton_group(n), houghton_complete_action(n), n + 1)
    print(f"Z by H_{n}: certified F_{v.certified}, refuted F_{v.refuted}")
