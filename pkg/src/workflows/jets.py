"""
Cuspidal and nodal curves of the focal surface via the jet tower of X.

The locus I_X . X' . X'' on P3 x D2X is the family of triple points on the
lines of the congruence; its image in P3 is the cuspidal curve C and its
H-degree is the degree of the ruled surface of lines through the cusps.
"""
import logging
from functools import lru_cache
from typing import Dict, List, Tuple

from core.exact import ParamPoly
from core.spaces import CatalogEntry, jet_tower
from models.report import Finding, ReportOnlyRow
from workflows.focal import CONTEXT as FOCAL_CONTEXT, EXAMPLES as FOCAL_EXAMPLES
from workflows.focal import congruence_catalog, focal_invariants

logger = logging.getLogger(__name__)

SCENARIO = "jets"
CONTEXT = FOCAL_CONTEXT

EXAMPLES: Dict[str, Dict[str, int]] = {
    "kummer": FOCAL_EXAMPLES["kummer"],
    "example_1_14": FOCAL_EXAMPLES["example_1_14"],
}


@lru_cache(maxsize=None)
def jet_catalog() -> Dict[str, CatalogEntry]:
    return jet_tower(congruence_catalog()["X"])


@lru_cache(maxsize=None)
def jet_degrees() -> Dict[str, ParamPoly]:
    entry = jet_catalog()["P3xD2X"]
    variety = entry.variety
    triple = entry.cls("IX") * entry.cls("X1") * entry.cls("X2")
    degrees = {
        "cuspidal": variety.integrate(triple * variety.gen("h")),
        "ruled": variety.integrate(triple * variety.gen("H")),
    }
    logger.debug("Jet tower degrees: %s", {k: str(v) for k, v in degrees.items()})
    return degrees


def nodal_degree() -> ParamPoly:
    """
    deg D from a plane section of F: a curve of degree n with geometric genus
    p, deg C cusps and deg D nodes, so deg D = (n - 1)(n - 2)/2 - p - deg C.
    """
    invariants = focal_invariants()
    n = invariants.degree
    return (n - 1) * (n - 2) / 2 - invariants.sectional_genus - jet_degrees()["cuspidal"]


def findings() -> Tuple[List[Finding], List[ReportOnlyRow]]:
    entry = jet_catalog()["P3xD2X"]
    degrees = jet_degrees()
    nodes = nodal_degree()
    kummer = EXAMPLES["kummer"]

    rows = [
        Finding("jets_IX_class", entry.cls("IX"), parser=entry.parse),
        Finding("jets_X1_class", entry.cls("X1"), parser=entry.parse),
        Finding("jets_X2_class", entry.cls("X2"), parser=entry.parse),
        Finding("jets_deg_C", degrees["cuspidal"]),
        Finding("jets_ruled_degree", degrees["ruled"]),
        Finding("jets_deg_D", nodes),
        Finding("jets_kummer_deg_C", degrees["cuspidal"], bindings=kummer),
        Finding("jets_kummer_deg_D", nodes, bindings=kummer),
        Finding("jets_kummer_ruled", degrees["ruled"], bindings=kummer),
        Finding("jets_example_1_14_ruled", degrees["ruled"], bindings=EXAMPLES["example_1_14"]),
    ]
    return rows, []
