"""Homology of the RAAG semidirect Z, computed twice: by the Tor splitting of
the clique modules and by the cellular mapping torus. The two must agree."""
from wreathlab import GraphAutomorphism, mapping_torus_homology, nakaoka_decomposition
from wreathlab.graphs import complete_graph, SimpleGraph

cases = [
    ("K2, swap", complete_graph("uv"), {"u": "v", "v": "u"}),
    ("square, rotation", SimpleGraph("abcd", [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]),
     {"a": "b", "b": "c", "c": "d", "d": "a"}),
]
for label, graph, mapping in cases:
    phi = GraphAutomorphism.from_mapping(graph, mapping)
    for p in range(4):
        tor, torus = nakaoka_decomposition(graph, phi, p), mapping_torus_homology(graph, phi, p)
        print(f"{label:>16} H_{p}: {tor} | {torus} | {'agree' if tor == torus else 'DISAGREE'}")
