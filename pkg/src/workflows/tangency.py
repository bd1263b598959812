"""
Congruences of tangent lines to a surface Sigma of degree d.

Two routes to the bitangent congruence X1 are compared: through the divisor
Y1 on Y = P(Omega_Sigma(2)), and through the top class c4(R) on
T = P(Sym^2 Q*) over G(1,3). The flex tangent congruence X2 lives on Y2.
The symmetric-power closed forms used by R are regenerated from the
splitting oracle here as well.
"""
import logging
from functools import lru_cache
from typing import Dict, List, Tuple

from core.chow import GradedClass, Variety
from core.exact import ParamContext, ParamPoly
from core.oracle import fitted_class, oracle_class, splitting_host
from core.sheaf import TENSOR, combine
from core.spaces import (
    CatalogEntry,
    bitangent_space_t,
    grassmannian_g13,
    hypersurface_sigma,
    tangent_space_y,
)
from models.report import Finding, ReportOnlyRow

logger = logging.getLogger(__name__)

SCENARIO = "tangency"
CONTEXT = ("d",)

EXAMPLES: Dict[str, Dict[str, int]] = {
    "cubic": {"d": 3},
    "quartic": {"d": 4},
    "quintic": {"d": 5},
}

# Degree of the component quoted alongside the Y1.Y2 product (stationary
# bitangent planes); only used to split that product.
SECOND_COMPONENT_DEGREE = "2*d*(d - 3)*(3*d - 2)"

# How often Sigma itself is contained in the total focal surface.
SIGMA_MULTIPLICITY = {"X1": "(d + 2)*(d - 3)", "X2": "4"}

# Quoted from classical sources, not derived.
SALMON_CONSTANTS = (
    ("stationary_bitangent_degree", "Prop 4.8", "d*(d-2)*(d-3)*(d**2+2*d-4)"),
    ("five_point_contact_count", "Prop 4.8", "5*d*(d-4)*(7*d-12)"),
)


@lru_cache(maxsize=None)
def surface_catalog() -> Dict[str, CatalogEntry]:
    context = ParamContext(CONTEXT)
    sigma = hypersurface_sigma(context)
    return {"Sigma": sigma, "Y": tangent_space_y(sigma)}


@lru_cache(maxsize=None)
def bitangent_catalog() -> CatalogEntry:
    return bitangent_space_t(grassmannian_g13(ParamContext(CONTEXT)))


@lru_cache(maxsize=None)
def splitting_catalog() -> Variety:
    return splitting_host(ParamContext(CONTEXT))


def _double_points(order: ParamPoly, klass: ParamPoly, normal_c2: ParamPoly) -> ParamPoly:
    # [X]^2 = a^2 + b^2 in G(1,3)
    return order * order + klass * klass - normal_c2


def _divisor_coefficient(cls: GradedClass, generator: str) -> ParamPoly:
    """Coefficient of a degree-1 generator in a divisor class written in normal form."""
    variety = cls.variety
    target = tuple(1 if name == generator else 0 for name in variety.generator_names)
    for monomial, coeff in cls.terms():
        if tuple(monomial) == target:
            return coeff
    return variety.context.zero


def chern_number(cls: GradedClass, c1, c2) -> ParamPoly:
    """Evaluates a class on the splitting host at numeric c1, c2."""
    variety = cls.variety
    i1, i2 = variety.index("c1"), variety.index("c2")
    total = variety.context.zero
    for monomial, coeff in cls.terms():
        total = total + coeff * (c1 ** monomial[i1]) * (c2 ** monomial[i2])
    return total


@lru_cache(maxsize=None)
def flex_congruence() -> Dict[str, object]:
    """X2 on Y2 and the Y1 route to X1, all on Y."""
    Y = surface_catalog()["Y"]
    variety = Y.variety
    l = Y.cls("l")
    Q, S = Y.sheaf("Q"), Y.sheaf("S")
    c1, c2 = Q.chern(1), Q.chern(2)
    y1, y2, yp = Y.cls("Y1"), Y.cls("Y2"), Y.cls("Yp")

    canonical_y2 = Y.cls("KY") + y2
    order = Y.integrate(y2 * (c1 * c1 - c2))
    klass = Y.integrate(y2 * c2)
    genus = Y.integrate(y2 * (canonical_y2 + l) * l) / 2 + 1
    normal = combine(S, Q, TENSOR).total_chern * (variety.one() + y2) * variety.tangent_chern.inverse()
    double = _double_points(order, klass, Y.integrate(y2 * normal.component(2)))
    # a line L on Y2 with h.L = 1 is rational, so L^2 = -K.L - 2 and the
    # multiplicity is K.L + 2
    multiplicity = _divisor_coefficient(canonical_y2, "h") + 2

    return {
        "canonical_y2": canonical_y2,
        "order": order,
        "class": klass,
        "genus": genus,
        "double_points": double,
        "multiplicity": multiplicity,
        "x1_order": Y.integrate(y1 * (c1 * c1 - c2)) / 2,
        "x1_class": Y.integrate(y1 * c2) / 2,
        "y1_c2": Y.integrate(y1 * c2),
        "y1_y2_l": Y.integrate(y1 * y2 * l),
        "y2_yp_l": Y.integrate(y2 * yp * l) / 2,
    }


@lru_cache(maxsize=None)
def bitangent_congruence() -> Dict[str, ParamPoly]:
    """X1 = c4(R) on T: order, class, sectional genus and double points."""
    T = bitangent_catalog()
    variety = T.variety
    x1 = T.cls("X1")
    q1 = T.cls("q1")
    R = T.sheaf("R")
    order = T.integrate(x1 * T.cls("alpha"))
    klass = T.integrate(x1 * T.cls("beta"))
    genus = T.integrate(x1 * (T.cls("KT") + R.chern(1) + q1) * q1) / 2 + 1
    normal = (
        combine(T.sheaf("S"), T.sheaf("Q"), TENSOR).total_chern
        * R.total_chern
        * variety.tangent_chern.inverse()
    )
    double = _double_points(order, klass, T.integrate(x1 * normal.component(2)))
    logger.debug("Bitangent congruence: order %s, class %s", order, klass)
    return {"order": order, "class": klass, "genus": genus, "double_points": double}


def focal_degree(data: Dict[str, ParamPoly], key: str = "order") -> ParamPoly:
    return data[key] * 2 + data["genus"] * 2 - 2


@lru_cache(maxsize=None)
def dual_surface_degree() -> ParamPoly:
    """deg Sigma* = c2(P1(O_Sigma(1))), the number of tangent planes through a general line."""
    sigma = surface_catalog()["Sigma"]
    return sigma.integrate(sigma.sheaf("P1").chern(2))


@lru_cache(maxsize=None)
def contour_genus() -> ParamPoly:
    """Genus of the contour curve Sigma . (polar of degree d - 1), by adjunction on Sigma."""
    sigma = surface_catalog()["Sigma"]
    h = sigma.cls("h")
    d = sigma.variety.context.param("d")
    curve = h * (d - 1)
    canonical = -sigma.variety.tangent_chern.component(1)
    return sigma.integrate((canonical + curve) * curve) / 2 + 1


def _symmetric_power_findings() -> List[Finding]:
    host = splitting_catalog()
    at_four = chern_number(oracle_class(host, 4, 4), 1, 0)
    at_five = chern_number(oracle_class(host, 5, 4), 0, -1)
    return [
        Finding("sym_c1", fitted_class(host, 1), parser=host.normal_form),
        Finding("sym_c2", fitted_class(host, 2), parser=host.normal_form),
        Finding("sym_c3", fitted_class(host, 3), parser=host.normal_form),
        Finding("lemma36_c4", fitted_class(host, 4), parser=host.normal_form),
        Finding(
            "lemma36_c4_at_3",
            oracle_class(host, 3, 4),
            parser=host.normal_form,
            bindings={"d": 3},
        ),
        Finding(
            "lemma36_c4_at_4",
            at_four,
            parser=lambda text: chern_number(host.normal_form(text), 1, 0),
            bindings={"d": 4},
            note="c1 = 1, c2 = 0: Chern roots 4, 3, 2, 1, 0",
        ),
        Finding(
            "lemma36_c4_at_5",
            at_five,
            parser=lambda text: chern_number(host.normal_form(text), 0, -1),
            bindings={"d": 5},
            note="c1 = 0, c2 = -1: Chern roots 5, 3, 1, -1, -3, -5",
        ),
    ]


def findings() -> Tuple[List[Finding], List[ReportOnlyRow]]:
    catalog = surface_catalog()
    sigma, Y = catalog["Sigma"], catalog["Y"]
    context = Y.variety.context
    flex = flex_congruence()
    bitangent = bitangent_congruence()

    x1_focal = focal_degree(bitangent)
    x2_focal = focal_degree(flex)
    d = context.param("d")
    x1_extra = x1_focal - context.parse(SIGMA_MULTIPLICITY["X1"]) * d
    x2_extra = x2_focal - context.parse(SIGMA_MULTIPLICITY["X2"]) * d
    remainder = flex["y1_y2_l"] - context.parse(SECOND_COMPONENT_DEGREE)

    rows = [
        Finding("tangency_c1_T_sigma", sigma.variety.tangent_chern.component(1), parser=sigma.parse),
        Finding("tangency_c1_Q", Y.sheaf("Q").chern(1), parser=Y.parse),
        Finding("tangency_Y1_class", Y.cls("Y1"), parser=Y.parse),
        Finding("tangency_c2_Q_Y1", flex["y1_c2"]),
        Finding("tangency_K_Y2", flex["canonical_y2"], parser=Y.parse),
        Finding("tangency_X2_order", flex["order"]),
        Finding("tangency_X2_class", flex["class"]),
        Finding("tangency_X2_genus", flex["genus"]),
        Finding("tangency_X2_double_points", flex["double_points"]),
        Finding("tangency_X2_double_points_cubic", flex["double_points"], bindings=EXAMPLES["cubic"]),
        Finding("tangency_multiplicity", flex["multiplicity"]),
        Finding("tangency_X1_order_T", bitangent["order"]),
        Finding("tangency_X1_class_T", bitangent["class"]),
        Finding("tangency_X1_order_Y", flex["x1_order"]),
        Finding("tangency_X1_class_Y", flex["x1_class"]),
        Finding("tangency_X1_genus", bitangent["genus"]),
        Finding("tangency_X1_double_points", bitangent["double_points"]),
        Finding(
            "tangency_X1_double_points_quartic",
            bitangent["double_points"],
            bindings=EXAMPLES["quartic"],
            note="X1 is smooth for quartics",
        ),
        Finding("tangency_Y1_Y2_l", flex["y1_y2_l"]),
        Finding("cor45_multiplicity", remainder, note="Y1.Y2.l minus the stationary-bitangent component"),
        Finding("prop49_statement", flex["y2_yp_l"]),
        Finding("prop49_proof", flex["y2_yp_l"]),
        Finding("tangency_X1_focal_degree", x1_focal),
        Finding("tangency_X1_extra_components", x1_extra),
        Finding("tangency_X2_focal_degree", x2_focal),
        Finding("tangency_X2_extra_components", x2_extra),
        Finding("tangency_quintic_X2_order", flex["order"], bindings=EXAMPLES["quintic"]),
        Finding("tangency_quintic_X2_class", flex["class"], bindings=EXAMPLES["quintic"]),
        Finding("tangency_quartic_X1_order", bitangent["order"], bindings=EXAMPLES["quartic"]),
        Finding("tangency_quartic_X1_class", bitangent["class"], bindings=EXAMPLES["quartic"]),
    ]
    rows.extend(_symmetric_power_findings())

    report_only = [
        ReportOnlyRow(name, ref, str(context.parse(text)), "classical constant, not derived")
        for name, ref, text in SALMON_CONSTANTS
    ]
    return rows, report_only
