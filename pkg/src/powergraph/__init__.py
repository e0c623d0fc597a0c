"""Power graphs of finite groups: construction, graph algorithms, and executable theorem checks."""
from .groups import (
    Group,
    SpectrumInfo,
    build_alternating,
    build_cyclic,
    build_dihedral,
    build_elementary_abelian,
    build_from_permutations,
    build_frobenius_7_3,
    build_generalized_quaternion,
    build_heisenberg,
    build_symmetric,
    direct_product,
    load_cayley_table,
    spectrum,
)
from .graphs import (
    DirectedPowerGraph,
    UndirectedGraph,
    build_directed,
    build_undirected,
    edge_count_closed_form,
    puncture,
    punctured_power_graph,
)
from .kernels import BACKEND
from .theorems import catalog, run_all, verify

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "DirectedPowerGraph",
    "Group",
    "SpectrumInfo",
    "UndirectedGraph",
    "build_alternating",
    "build_cyclic",
    "build_dihedral",
    "build_directed",
    "build_elementary_abelian",
    "build_from_permutations",
    "build_frobenius_7_3",
    "build_generalized_quaternion",
    "build_heisenberg",
    "build_symmetric",
    "build_undirected",
    "catalog",
    "direct_product",
    "edge_count_closed_form",
    "load_cayley_table",
    "puncture",
    "punctured_power_graph",
    "run_all",
    "spectrum",
    "verify",
]
