import numpy as np
import pytest

from wreathlab.errors import DomainError, ParseError
from wreathlab.graphs import SimpleGraph, complete_graph, flag_complex, path_graph
from wreathlab.homology import HomologyGroup, direct_sum, homology_all, homology_of
from wreathlab.polyprod import (
    CIRCLE, PROJECTIVE_PLANE, TORUS, WEDGE2, CellModel, build_polyprod_complex, cell_model,
    check_star_hypothesis, raag_homology,
)

import oracles

Z = HomologyGroup(1)


def reduced(groups):
    """Drop one Z from H_0."""
    h0 = groups[0]
    return [HomologyGroup(h0.betti - 1, h0.torsion)] + list(groups[1:])


def test_point_gives_the_model_itself():
    for X in (CIRCLE, PROJECTIVE_PLANE, TORUS):
        C = build_polyprod_complex(flag_complex(SimpleGraph("a"), 0), X)
        assert C.ranks == X.chains.ranks
        assert homology_all(C) == homology_all(X.chains)


@pytest.mark.parametrize("X", [CIRCLE, PROJECTIVE_PLANE])
def test_two_points_give_a_wedge(X):
    C = build_polyprod_complex(flag_complex(SimpleGraph("ab"), 1), X)
    hx = reduced(homology_all(X.chains))
    assert reduced(homology_all(C)) == [direct_sum(h, h) for h in hx]


def test_edge_of_circles_is_the_torus():
    C = build_polyprod_complex(flag_complex(complete_graph("ab"), 1), CIRCLE)
    assert homology_all(C) == [Z, HomologyGroup(2), Z]


def test_torus_over_edge_has_full_dimension():
    C = build_polyprod_complex(flag_complex(complete_graph("ab"), 1), TORUS)
    assert C.ranks == (1, 4, 6, 4, 1) and not C.truncated
    T = build_polyprod_complex(flag_complex(complete_graph("ab"), 1), TORUS, 3)
    assert T.truncated
    with pytest.raises(DomainError):
        homology_of(T, 3)


def test_raag_examples():
    path = path_graph("abc")
    assert [raag_homology(path, p) for p in range(4)] == [Z, HomologyGroup(3), HomologyGroup(2), HomologyGroup()]
    edgeless = SimpleGraph("abcd")
    assert raag_homology(edgeless, 1) == HomologyGroup(4)
    assert raag_homology(edgeless, 2) == HomologyGroup()
    assert raag_homology(complete_graph("uv"), 2) == Z


def test_star_hypothesis_examples():
    for g in (path_graph("abc"), complete_graph("abcd"), SimpleGraph("ab")):
        L = flag_complex(g, len(g))
        assert check_star_hypothesis(L, CIRCLE)
        assert check_star_hypothesis(L, WEDGE2)
        assert check_star_hypothesis(L, TORUS)
        assert not check_star_hypothesis(L, PROJECTIVE_PLANE)


def test_boundary_squared_zero_on_all_models_small_graphs():
    # construction raises if ∂∂ ≠ 0; iterate widely to exercise the signs
    for g in oracles.all_graphs(4):
        L = flag_complex(g, len(g))
        for X in (CIRCLE, WEDGE2, PROJECTIVE_PLANE, TORUS):
            C = build_polyprod_complex(L, X, 5)
            for p in range(2, C.top + 1):
                assert not np.any(C.boundary(p - 1).dot(C.boundary(p)))


def test_projective_plane_homology_against_sympy():
    L = flag_complex(path_graph("abc"), 2)
    C = build_polyprod_complex(L, PROJECTIVE_PLANE)
    bds = {p: C.boundary(p).tolist() for p in range(1, C.top + 1)}
    for p in range(C.top):
        assert homology_of(C, p) == oracles.homology_by_ranks(C.ranks, bds, p)
    assert homology_of(C, 1) == HomologyGroup(0, (2, 2, 2))


def test_cell_model_files(tmp_path):
    path = tmp_path / "x.json"
    path.write_text('{"ranks": [1, 1, 1], "boundaries": {"2": [[2]]}, "basepoint": 0}')
    X = cell_model(str(path))
    assert X.chains.ranks == PROJECTIVE_PLANE.chains.ranks
    path.write_text('{"ranks": [2, 1], "boundaries": {"1": [[1], [-1]]}}')
    with pytest.raises(ParseError, match="single 0-cell"):
        cell_model(str(path))
    assert cell_model("wedge2") is WEDGE2
