"""
Focal surface of an abstract congruence X, computed on A_X.

The focal surface F and the residual surface R are linked in the complete
intersection M of the ramification divisors A = 2h + H + K and
B = 2hs + H + K. R is a Porteous locus of T_A -> T_J, and the invariants of F
come out of the Hilbert polynomial of omega_F(T h).
"""
import logging
from functools import lru_cache
from typing import Dict, List, Tuple

from core.exact import ParamContext
from core.hrr import (
    HilbertPolynomial,
    SurfaceInvariants,
    euler_characteristic,
    hilbert_polynomial,
    koszul_chi,
    restricted_chi,
    surface_invariants_from_hilbert,
)
from core.sheaf import VirtualSheaf, line_bundle, porteous, principal_parts, trivial
from core.spaces import CONGRUENCE_PARAMS, CatalogEntry, formal_congruence_surface, tower_ix_ax
from models.report import Finding, ReportOnlyRow

logger = logging.getLogger(__name__)

SCENARIO = "focal"
CONTEXT = CONGRUENCE_PARAMS

EXAMPLES: Dict[str, Dict[str, int]] = {
    "kummer": {"a": 2, "b": 2, "g": 1, "k2": 4, "chi": 1},
    "example_1_14": {"a": 2, "b": 3, "g": 1},
    "example_2_4": {"a": 2, "b": 6, "g": 3},
}


@lru_cache(maxsize=None)
def congruence_catalog() -> Dict[str, CatalogEntry]:
    context = ParamContext(CONTEXT)
    X = formal_congruence_surface(context)
    tower = tower_ix_ax(X)
    logger.debug("Built the I_X / A_X tower over the formal congruence")
    return {"X": X, **tower}


@lru_cache(maxsize=None)
def linkage_classes() -> Tuple:
    """([R], [F]) on A_X; [R] is c2(T_J - T_A), the corank-one locus of T_A -> T_J."""
    ax = congruence_catalog()["A_X"]
    difference = VirtualSheaf(ax.sheaf("TJ"), ax.sheaf("T"), "T_J - T_A")
    residual = porteous(difference, e=4, f=5, r=3)
    focal_class = ax.cls("A") * ax.cls("B") - residual
    return residual, focal_class


@lru_cache(maxsize=None)
def focal_hilbert_polynomial() -> HilbertPolynomial:
    """
    chi(omega_F(T h)) = chi(I_R(D)) - chi(I_M(D)) with D = T h + 4H + 3K.

    chi(I_R(D)) comes from 0 -> T_A -> T_J -> I_R(Delta0) -> 0 and chi(I_M(D))
    from the Koszul resolution of M.
    """
    ax = congruence_catalog()["A_X"]
    variety = ax.variety
    h = variety.gen("h")
    dualizing = variety.normal_form("4*H + 3*K")
    A, B, delta0 = ax.cls("A"), ax.cls("B"), ax.cls("Delta0")
    structure = trivial(variety)

    ideal_r = (
        hilbert_polynomial(ax, ax.sheaf("TJ"), h, twist=dualizing - delta0)
        - hilbert_polynomial(ax, ax.sheaf("T"), h, twist=dualizing - delta0)
    )
    ideal_m = (
        hilbert_polynomial(ax, structure, h, twist=dualizing - A)
        + hilbert_polynomial(ax, structure, h, twist=dualizing - B)
        - hilbert_polynomial(ax, structure, h, twist=dualizing - A - B)
    )
    return ideal_r - ideal_m


@lru_cache(maxsize=None)
def focal_invariants() -> SurfaceInvariants:
    return surface_invariants_from_hilbert(focal_hilbert_polynomial(), dualizing=True)


@lru_cache(maxsize=None)
def focal_intersections() -> Dict[str, object]:
    """Degree, class and mu1 of F as intersection numbers with h^2, hs^2 and h hs."""
    ax = congruence_catalog()["A_X"]
    _, focal_class = linkage_classes()
    h, hs = ax.variety.gen("h"), ax.variety.gen("hs")
    return {
        "degree": ax.integrate(focal_class * h * h),
        "class": ax.integrate(focal_class * hs * hs),
        "mu1": ax.integrate(focal_class * h * hs),
    }


def findings() -> Tuple[List[Finding], List[ReportOnlyRow]]:
    from workflows.jets import jet_degrees

    catalog = congruence_catalog()
    X, ix, ax = catalog["X"], catalog["I_X"], catalog["A_X"]
    residual, focal_class = linkage_classes()
    numbers = focal_intersections()
    invariants = focal_invariants()

    T_A, TJ = ax.sheaf("T"), ax.sheaf("TJ")
    hyperplane = line_bundle(X.variety, X.variety.gen("H"), "O_X(1)")
    mu1_from_parts = X.integrate(principal_parts(hyperplane).chern(2))
    adjunction = ax.cls("KA") + ax.cls("A") + ax.cls("B")
    koszul_gap = (
        restricted_chi(ax, ax.cls("Delta0"), ax.cls("A"), ax.cls("B"))
        - koszul_chi(ax, ax.cls("Delta0"), ax.cls("A"), ax.cls("B"))
    )
    kummer = EXAMPLES["kummer"]

    rows = [
        Finding("focal_c1_TI", ix.variety.tangent_chern.component(1), parser=ix.parse),
        Finding("focal_c1_TA", T_A.chern(1), parser=ax.parse),
        Finding("focal_c2_TA", T_A.chern(2), parser=ax.parse),
        Finding("focal_c1_TJ", TJ.chern(1), parser=ax.parse),
        Finding("focal_c2_TJ", TJ.chern(2), parser=ax.parse),
        Finding("focal_residual_class", residual, parser=ax.parse),
        Finding("focal_linkage_class", focal_class, parser=ax.parse),
        Finding("focal_adjunction", adjunction, parser=ax.parse),
        Finding("focal_degree", numbers["degree"]),
        Finding("focal_class", numbers["class"]),
        Finding("focal_mu1", numbers["mu1"]),
        Finding("focal_mu1_principal_parts", mu1_from_parts),
        Finding("focal_chi_X", euler_characteristic(X, trivial(X.variety))),
        Finding("focal_koszul_crosscheck", koszul_gap),
        Finding("focal_hilbert_degree", invariants.degree),
        Finding("focal_sectional_genus", invariants.sectional_genus),
        Finding("focal_chi", invariants.chi_structure),
        Finding("focal_cuspidal_degree", jet_degrees()["cuspidal"]),
        Finding("focal_kummer_degree", numbers["degree"], bindings=kummer),
        Finding("focal_kummer_class", numbers["class"], bindings=kummer),
        Finding("focal_kummer_mu1", numbers["mu1"], bindings=kummer),
        Finding("focal_example_2_4_degree", numbers["degree"], bindings=EXAMPLES["example_2_4"]),
    ]
    return rows, []
