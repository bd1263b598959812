"""
Bidegree of the congruence of bitangent lines from plane-curve data.

The plane section of a surface of degree d with class mu1 and kappa cusps
satisfies the Pluecker relations

    d     = mu1 (mu1 - 1) - 2 b - 3 i
    kappa = 3 mu1 (mu1 - 2) - 6 b - 8 i

in its bitangent count b and flex count i; eliminating i gives b. The same
relations for the dual surface (degree d*, kappa* cusps) give the order a.
"""
import logging
from functools import lru_cache
from typing import Dict, List, Tuple

from core.exact import ParamContext, ParamPoly, is_integral
from core.oracle import render_value, solve_linear
from models.report import Finding, ReportOnlyRow
from workflows import focal, tangency

logger = logging.getLogger(__name__)

SCENARIO = "plucker"
CONTEXT = ("d", "mu1", "kappa", "dstar", "kappastar")

EXAMPLES: Dict[str, Dict[str, int]] = {
    "example_5_2": {"d": 4, "mu1": 3, "kappa": 3},
    "example_5_3": {"d": 8, "mu1": 4, "kappa": 12},
    "example_5_4": {"d": 4, "mu1": 12, "kappa": 0},
}

# Genus of a plane section of the dual surface in the third example, as stated.
EXAMPLE_5_3_SECTION_GENUS = 1
# Bidegree and genus of the congruence whose focal surface is that dual surface.
EXAMPLE_5_3_CONGRUENCE = {"a": 6, "b": 2, "g": 3}

RELATIONS = (
    "{degree} - (mu1*(mu1 - 1) - 2*{bitangents} - 3*{flexes})",
    "{cusps} - (3*mu1*(mu1 - 2) - 6*{bitangents} - 8*{flexes})",
)


def _context() -> ParamContext:
    return ParamContext(CONTEXT)


@lru_cache(maxsize=None)
def eliminate(degree: str, cusps: str) -> Dict[str, ParamPoly]:
    """Solves the two relations for the bitangent and flex counts."""
    equations = [
        text.format(degree=degree, cusps=cusps, bitangents="unknown_b", flexes="unknown_i")
        for text in RELATIONS
    ]
    solution = solve_linear(["unknown_b", "unknown_i"], equations, _context())
    return {"bitangents": solution["unknown_b"], "flexes": solution["unknown_i"]}


def plane_curve_nodes(degree: ParamPoly, cusps: ParamPoly, genus) -> ParamPoly:
    """delta from genus = (n - 1)(n - 2)/2 - delta - kappa."""
    return (degree - 1) * (degree - 2) / 2 - cusps - genus


def _flex_rows(flexes: ParamPoly) -> List[ReportOnlyRow]:
    rows = []
    for name, bindings in EXAMPLES.items():
        value = flexes.subs(bindings)
        integral = value.is_constant() and is_integral(value.constant_value())
        note = "integral" if integral else "non-integral: inconsistent Pluecker inputs"
        rows.append(ReportOnlyRow(f"plucker_{name}_flexes", "Lemma 5.1", render_value(value), note))
    return rows


def findings() -> Tuple[List[Finding], List[ReportOnlyRow]]:
    context = _context()
    plane = eliminate("d", "kappa")
    dual = eliminate("dstar", "kappastar")
    b_formula, a_formula = plane["bitangents"], dual["bitangents"]

    d, mu1, kappa = context.param("d"), context.param("mu1"), context.param("kappa")

    # Example 5.3: Sigma* of degree 8 with 12 cusps and sections of genus 1
    nodes = plane_curve_nodes(d, kappa, EXAMPLE_5_3_SECTION_GENUS)
    section_class = d * (d - 1) - nodes * 2 - kappa * 3
    third_focal = focal.focal_intersections()["degree"]

    # Example 5.4: the dual of a smooth quartic
    quartic = tangency.EXAMPLES["quartic"]
    dual_degree = tangency.dual_surface_degree()
    contour = tangency.contour_genus()
    bitangent = tangency.bitangent_congruence()
    order_value = bitangent["order"].evaluate(quartic)
    dstar_value = dual_degree.evaluate(quartic)
    (kappastar,) = solve_linear(
        ["kappastar"],
        [a_formula.as_expr() - order_value],
        context,
    ).values()
    fourth = dict(EXAMPLES["example_5_4"], dstar=dstar_value)
    kappastar_value = kappastar.evaluate(fourth)
    dual_nodes = plane_curve_nodes(
        context.const(dstar_value), context.const(kappastar_value), contour.evaluate(quartic)
    )
    dual_class = context.const(dstar_value * (dstar_value - 1)) - dual_nodes * 2 - kappastar_value * 3
    x1_dual_focal = tangency.focal_degree(bitangent, key="class")

    rows = [
        Finding("plucker_b_formula", b_formula),
        Finding("plucker_a_formula", a_formula),
        Finding("plucker_example_5_2_b", b_formula, bindings=EXAMPLES["example_5_2"]),
        Finding("plucker_example_5_3_b", b_formula, bindings=EXAMPLES["example_5_3"]),
        Finding("plucker_example_5_4_b", b_formula, bindings=EXAMPLES["example_5_4"]),
        Finding("plucker_example_5_3_nodes", nodes, bindings=EXAMPLES["example_5_3"]),
        Finding("plucker_example_5_3_class", section_class, bindings=EXAMPLES["example_5_3"]),
        Finding("plucker_example_5_3_focal_degree", third_focal, bindings=EXAMPLE_5_3_CONGRUENCE),
        Finding("plucker_example_5_4_dual_degree", dual_degree, bindings=quartic),
        Finding("plucker_example_5_4_kappastar", kappastar, bindings=fourth),
        Finding("plucker_example_5_4_contour_genus", contour, bindings=quartic),
        Finding("plucker_example_5_4_dual_nodes", dual_nodes, bindings=EXAMPLES["example_5_4"]),
        Finding("plucker_example_5_4_dual_class", dual_class, bindings=EXAMPLES["example_5_4"]),
        Finding(
            "example54_focal_degree",
            x1_dual_focal,
            bindings=quartic,
            note="2b + 2g - 2 of the (12, 28) congruence, in the dual space",
        ),
        Finding("plucker_example_5_4_dual_multiplicity", x1_dual_focal, bindings=quartic),
    ]

    report_only = _flex_rows(plane["flexes"])
    second = dict(EXAMPLES["example_5_2"], dstar=0, kappastar=0)
    report_only.append(ReportOnlyRow(
        "plucker_example_5_2_a_value",
        "Example 5.2",
        render_value(a_formula.subs(second)),
        "d* = kappa* = 0: the dual data is degenerate and the formula does not apply",
    ))
    return rows, report_only
