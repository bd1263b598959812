"""
Bisecant congruence of a space curve of degree d and genus p, on C^(2).

The multiplication table of C^(2) is not taken on trust: P.Delta and the
canonical class are solved as the unique values for which the bidegree and
genus statements of the bisecant congruence hold identically in d.
"""
import logging
from functools import lru_cache
from typing import Dict, List, Tuple

from core.chow import GradedClass
from core.exact import ParamContext, ParamPoly
from core.hrr import euler_characteristic
from core.oracle import solve_linear
from core.sheaf import trivial
from core.spaces import CatalogEntry, sym_square_curve
from models.report import Finding, ReportOnlyRow

logger = logging.getLogger(__name__)

SCENARIO = "bisecants"
CONTEXT = ("d", "p")

EXAMPLES: Dict[str, Dict[str, int]] = {
    "twisted_cubic": {"d": 3, "p": 0},
    "example_2_4": {"d": 4, "p": 1},
}

# Statements the forced table is solved against.
ORDER_STATEMENT = "(d - 1)*(d - 2)/2 - p"
GENUS_STATEMENT = "(d - 2)*(d - 3 + 2*p)/2"

# Multiplication table as printed: P.P = P.Delta = 1, K = (2 - 2p) P + Delta/2.
PRINTED_P_DELTA = "1"
PRINTED_CANONICAL = "(2 - 2*p)*P + Delta/2"


@lru_cache(maxsize=None)
def curve_catalog() -> CatalogEntry:
    return sym_square_curve(ParamContext(CONTEXT))


@lru_cache(maxsize=None)
def printed_curve_catalog() -> CatalogEntry:
    return sym_square_curve(
        ParamContext(CONTEXT),
        p_delta=PRINTED_P_DELTA,
        canonical=PRINTED_CANONICAL,
        name="C2_printed",
    )


def congruence_invariants(entry: CatalogEntry) -> Dict[str, ParamPoly]:
    """Order, class, sectional genus and focal degree of the congruence C^(2) -> G(1,3)."""
    Q = entry.sheaf("Q")
    c1, c2 = Q.chern(1), Q.chern(2)
    order = entry.integrate(c1 * c1 - c2)
    genus = entry.integrate((entry.cls("K") + c1) * c1) / 2 + 1
    return {
        "order": order,
        "class": entry.integrate(c2),
        "genus": genus,
        "focal_degree": order * 2 + genus * 2 - 2,
    }


@lru_cache(maxsize=None)
def forced_p_delta() -> ParamPoly:
    """The value x = P.Delta for which the order is (d-1)(d-2)/2 - p for every d and p."""
    scratch_context = ParamContext(CONTEXT + ("x",))
    scratch = sym_square_curve(scratch_context, p_delta="x", name="C2_x")
    Q = scratch.sheaf("Q")
    order = scratch.integrate(Q.chern(1) * Q.chern(1) - Q.chern(2))
    equation = order - scratch_context.parse(ORDER_STATEMENT)
    (value,) = solve_linear(["x"], [equation], ParamContext(CONTEXT), identity_in=CONTEXT).values()
    logger.debug("Forced P.Delta = %s", value)
    return value


@lru_cache(maxsize=None)
def forced_canonical() -> GradedClass:
    """
    K = alpha P + beta Delta from adjunction on the diagonal, (K + Delta).Delta = 2p - 2,
    and the genus statement, K.c1(Q) = 2g - 2 - c1(Q)^2, identically in d.
    """
    scratch_context = ParamContext(CONTEXT + ("alpha", "beta"))
    scratch = sym_square_curve(scratch_context, canonical="alpha*P + beta*Delta", name="C2_K")
    K, delta = scratch.cls("K"), scratch.variety.gen("Delta")
    c1 = scratch.sheaf("Q").chern(1)
    genus = scratch_context.parse(GENUS_STATEMENT)
    p = scratch_context.param("p")
    equations = [
        scratch.integrate((K + delta) * delta) - (p * 2 - 2),
        scratch.integrate(K * c1) - (genus * 2 - 2 - scratch.integrate(c1 * c1)),
    ]
    solution = solve_linear(["alpha", "beta"], equations, ParamContext(CONTEXT), identity_in=("d",))
    entry = curve_catalog()
    variety = entry.variety
    return variety.gen("P") * solution["alpha"] + variety.gen("Delta") * solution["beta"]


def findings() -> Tuple[List[Finding], List[ReportOnlyRow]]:
    entry = curve_catalog()
    invariants = congruence_invariants(entry)
    printed = congruence_invariants(printed_curve_catalog())
    K = entry.cls("K")
    example = EXAMPLES["example_2_4"]
    cubic = EXAMPLES["twisted_cubic"]

    rows = [
        Finding("bisecant_order", invariants["order"]),
        Finding("bisecant_class", invariants["class"]),
        Finding("bisecant_genus", invariants["genus"]),
        Finding("bisecant_K2", entry.integrate(K * K)),
        Finding("bisecant_chi", euler_characteristic(entry, trivial(entry.variety))),
        Finding("bisecant_focal_degree", invariants["focal_degree"]),
        Finding("bisecant_p_delta", forced_p_delta()),
        Finding("bisecant_canonical", forced_canonical(), parser=entry.parse),
        Finding(
            "bisecant_printed_table_order",
            printed["order"],
            note="order computed with P.Delta = 1",
        ),
        Finding("bisecant_example_2_4_order", invariants["order"], bindings=example),
        Finding("bisecant_example_2_4_class", invariants["class"], bindings=example),
        Finding("bisecant_example_2_4_genus", invariants["genus"], bindings=example),
        Finding("bisecant_example_2_4_focal_degree", invariants["focal_degree"], bindings=example),
        Finding("bisecant_twisted_cubic_order", invariants["order"], bindings=cubic),
        Finding("bisecant_twisted_cubic_class", invariants["class"], bindings=cubic),
    ]
    return rows, []
