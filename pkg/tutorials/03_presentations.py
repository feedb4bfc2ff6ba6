"""Presentations of graph-wreath products and their abelianizations: one
copy of A_ab per vertex orbit plus H_ab."""
from wreathlab import FinitePermAction, PeriodicShiftAction, abelianization, graph_wreath_presentation
from wreathlab.actions import ALL_NONZERO
from wreathlab.errors import DomainError
from wreathlab.graphs import complete_graph
from wreathlab.presentations import cyclic_group, free_group

swap = FinitePermAction(complete_graph("uv"), [{"u": "v", "v": "u"}])
P = graph_wreath_presentation(swap, cyclic_group(3), cyclic_group(2, "h"))
print(P)
print("abelianization:", abelianization(P))

# Z acting on the path graph on Z: one vertex orbit, one edge orbit
path = PeriodicShiftAction(["v"], {("v", "v"): [1]})
Q = graph_wreath_presentation(path, cyclic_group(2), free_group("t"))
print(Q)
print("abelianization:", abelianization(Q))

# complete graph on Z: infinitely many edge orbits, no finite presentation
try:
    graph_wreath_presentation(PeriodicShiftAction(["v"], {("v", "v"): ALL_NONZERO}),
                              cyclic_group(2), free_group("t"))
except DomainError as exc:
    print("refused:", exc)
