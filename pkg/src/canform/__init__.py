"""Exact computation of invariant differential forms of graph Laplacians and related matrix identities."""
from .algebra import MultiPoly, PolyMatrix, poly_det, poly_perm
from .exterior import ExtForm, FormMatrix, GeneratorTable, form_matrix_power, isotypical_project, trace_of_power
from .graphs import Graph, GraphError, cycle_basis_from_tree, graph_polynomial, laplacian, load_graph, wheel
from .typenu import TypeNu, omega_sign
from .identities import canonical_form_graph, theorem1_check
from .wheel import ZetaCombo, cmk, wheel_integral_exact, wheel_integrand
from .antisym import antisymmetrize_bruteforce, antisymmetrize_closed
from .numeric import McEstimate, mc_integrate, zeta_numeric

__all__ = [
    "MultiPoly",
    "PolyMatrix",
    "poly_det",
    "poly_perm",
    "ExtForm",
    "FormMatrix",
    "GeneratorTable",
    "form_matrix_power",
    "isotypical_project",
    "trace_of_power",
    "Graph",
    "GraphError",
    "cycle_basis_from_tree",
    "graph_polynomial",
    "laplacian",
    "load_graph",
    "wheel",
    "TypeNu",
    "omega_sign",
    "canonical_form_graph",
    "theorem1_check",
    "ZetaCombo",
    "cmk",
    "wheel_integral_exact",
    "wheel_integrand",
    "antisymmetrize_bruteforce",
    "antisymmetrize_closed",
    "McEstimate",
    "mc_integrate",
    "zeta_numeric",
]

__version__ = "0.1.0"
