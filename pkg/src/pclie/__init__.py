"""Exact computations in partially commutative Lie algebras defined by graphs."""

from .analysis import (
    Decomposition,
    Variety,
    build_table,
    centralizer_computed,
    centralizer_predicted,
    compare_centralizer,
    is_decomposable,
    split,
    component_split,
    theorem1_split,
    verify_split,
)
from .graphs import Graph, adjacent_to_all, complement, connected_components, induced_subgraph
from .metabelian import MetabelianAlgebra, basis_for_multidegree, relation_subspace
from .nilpotent import StructureTable, build_structure, truncated_free
from .oracle import search_decomposition
from .scalars import GF, QQ
from .terms import LiePoly, mdeg, parse_expr, supp

__version__ = "0.1.0"
