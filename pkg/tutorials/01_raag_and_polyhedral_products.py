"""RAAG homology as a polyhedral product over the circle, and the star
hypothesis for the three cell models."""
from wreathlab import flag_complex, raag_homology, check_star_hypothesis, build_polyprod_complex, homology_of
from wreathlab.graphs import SimpleGraph
from wreathlab.polyprod import CIRCLE, WEDGE2, PROJECTIVE_PLANE, TORUS

# path a - b - c: cliques are {}, 3 vertices, 2 edges
path = SimpleGraph("abc", [("a", "b"), ("b", "c")])
for p in range(3):
    print(f"H_{p}(RAAG(path3)) = {raag_homology(path, p)}")

L = flag_complex(path, 3)
for X in (CIRCLE, WEDGE2, PROJECTIVE_PLANE, TORUS):
    C = build_polyprod_complex(L, X)
    groups = ", ".join(str(homology_of(C, p)) for p in range(C.top))
    print(f"{X.name:>16}: star hypothesis {check_star_hypothesis(L, X)}; H_* = {groups}")
