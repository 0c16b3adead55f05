"""Plabic graphs of Grassmannian type: dihedral orbits, exact cluster
mutation over the Plucker field, superpotential tropicalization, and
Gelfand-Tsetlin equivalence of the resulting Newton-Okounkov bodies."""

from .subsets import (
    DihedralElement,
    KSubset,
    LabelCollection,
    apply_dihedral,
    cyclic_interval,
    dihedral_group,
    is_maximal_wsc,
    is_weakly_separated,
    preserves_weak_separation,
    sigma,
    tau,
)
from .plabic import (
    Move,
    PlabicError,
    PlabicGraph,
    build_checkboard,
    build_dual,
    build_dual_checkboard,
    build_dual_rectangle,
    build_family,
    build_rectangle,
    checkboard_label,
    dual_checkboard_label,
    dual_rectangle_label,
    j_frozen,
    j_plus,
    rectangle_label,
)
from .quiver import Quiver, mutate_quiver, quiver_from_graph
from .expressions import LaurentPoly, RationalExpr
from .seeds import (
    CLOSED_FORM_FAMILIES,
    GrassmannPoint,
    Seed,
    closed_form_W,
    diagonal_sequence,
    express_plucker,
    family_member,
    mutate_seed,
    plucker,
    seed_from_graph,
    superpotential,
    superpotential_terms,
)
from .polytopes import (
    AffineLatticeMap,
    HPolytope,
    TropicalForm,
    check_no_body_is_gt,
    conjecture_scan,
    gt_polytope,
    polytopes_equal,
    superpotential_polytope,
    tropicalize,
    unimodular_map_F,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
