"""Homology, presentations and finiteness types of graph-wreath products."""
from .errors import DomainError, InvariantError, ParseError, ResourceCapError, WreathlabError
from .graphs import SimpleGraph, FlagComplex, enumerate_cliques, flag_complex, simplex_boundary
from .homology import ChainComplex, HomologyGroup, homology_of, smith_normal_form
from .actions import (
    ALL_NONZERO, INFINITE, CatalogAction, FinitePermAction, PeriodicShiftAction,
    clique_orbits, cocompact_skeleton, stabilizer_of_clique,
)
from .polyprod import build_polyprod_complex, cell_model, check_star_hypothesis, raag_homology
from .lhs import (
    GraphAutomorphism, induced_clique_map, mapping_torus_homology, nakaoka_decomposition,
)
from .presentations import (
    Presentation, abelianization, graph_product_presentation, graph_wreath_presentation,
)
from .verdict import FinitenessType, GroupSpec, classify, module_fp_status, theorem_a_verdict
from .houghton import HoughtonElement, act, compose, transitivity_witness

__version__ = "0.1.0"
