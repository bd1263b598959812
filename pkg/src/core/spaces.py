"""
Catalog of the varieties and bundles the verification suites compute on.

Every entry is assembled from chow/sheaf primitives. Classes that the source
prints (tangent classes of the tower, c1(Q) on Y, the divisors of Y) are
computed here; scenarios compare them against the printed text.

Bidegree convention: on a congruence X, c2(Q|X) is the class b and
c2(S|X) the order a, so that I_X = P(Q|X) carries h^2 = H h - b pt and the
alpha-plane class on G(1,3) is c2(S) = q1^2 - q2.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, Optional, Union

from sympy import Symbol

from core.chow import (
    GeneratorSpec,
    GradedClass,
    Variety,
    VarietySpec,
    build_variety,
    point_variety,
    product_variety,
    projective_bundle,
)
from core.exact import ParamContext
from core.oracle import solve_linear
from core.sheaf import (
    AnySheaf,
    Sheaf,
    VirtualSheaf,
    combine,
    dual,
    from_chern,
    line_bundle,
    principal_parts,
    pullback,
    relative_tangent_of_bundle,
    sym_power_concrete,
    sym_power_rank2_symbolic,
    tangent_sheaf,
    twist_by_line,
    TENSOR,
)

logger = logging.getLogger(__name__)

CONGRUENCE_PARAMS = ("a", "b", "g", "k2", "chi")


@dataclass
class CatalogEntry:
    """A variety together with the sheaves and classes named on it."""
    variety: Variety
    sheaves: Dict[str, AnySheaf] = field(default_factory=dict)
    classes: Dict[str, GradedClass] = field(default_factory=dict)

    @property
    def name(self) -> str:
        return self.variety.name

    def cls(self, name: str) -> GradedClass:
        try:
            return self.classes[name]
        except KeyError as exc:
            raise KeyError(f"{self.name} has no class named {name!r}") from exc

    def sheaf(self, name: str) -> AnySheaf:
        try:
            return self.sheaves[name]
        except KeyError as exc:
            raise KeyError(f"{self.name} has no sheaf named {name!r}") from exc

    def parse(self, text: Union[str, int]) -> GradedClass:
        """Class text over the generators and the named classes of this entry."""
        gens = set(self.variety.generator_names)
        named = {key: value for key, value in self.classes.items() if key not in gens}
        return self.variety.parse(text, named=named)

    def integrate(self, cls: GradedClass):
        return self.variety.integrate(cls)


def _require(context: ParamContext, names) -> None:
    missing = [n for n in names if n not in context.names]
    if missing:
        raise ValueError(f"Parameter context {list(context.names)} lacks {missing}")


# ---------- Projective spaces and G(1,3) ----------

def projective_space(n: int, context: ParamContext, gen: str = "h", name: Optional[str] = None) -> CatalogEntry:
    """
    P^n with hyperplane class ``gen``; n = 0 gives the point variety.

    Raises:
        ValueError: If n is negative.
    """
    if n < 0:
        raise ValueError(f"Projective space of negative dimension {n}")
    if n == 0:
        return CatalogEntry(point_variety(context))
    variety = build_variety(VarietySpec(
        name=name or f"P{n}",
        context=context,
        generators=(GeneratorSpec(gen, 1),),
        dimension=n,
        rewrites={f"{gen}**{n + 1}": "0"},
        integration={f"{gen}**{n}": "1"},
        point_class=f"{gen}**{n}",
        tangent_chern=f"(1 + {gen})**{n + 1}",
    ))
    return CatalogEntry(variety, sheaves={"O(1)": line_bundle(variety, variety.gen(gen), "O(1)")})


def grassmannian_g13(context: ParamContext) -> CatalogEntry:
    """
    G(1,3) with q1 = c1(Q), q2 = c2(Q); S is dual to the kernel of O^4 -> Q.

    The tangent class is c(S (x) Q).
    """
    variety = build_variety(VarietySpec(
        name="G13",
        context=context,
        generators=(GeneratorSpec("q1", 1), GeneratorSpec("q2", 2)),
        dimension=4,
        rewrites={"q1**3": "2*q1*q2", "q1**2*q2": "q2**2"},
        integration={"q2**2": "1"},
        point_class="q2**2",
    ))
    Q = from_chern(variety, 2, "1 + q1 + q2", "Q")
    S = dual(Sheaf(variety, 2, Q.total_chern.inverse().truncate(2), "S*")).named("S")
    tangent = combine(S, Q, TENSOR)
    variety.attach_tangent(tangent.total_chern)
    classes = {
        "alpha": S.chern(2),
        "beta": Q.chern(2),
        "q1": variety.gen("q1"),
        "q2": variety.gen("q2"),
    }
    return CatalogEntry(variety, sheaves={"Q": Q, "S": S, "T": tangent_sheaf(variety)}, classes=classes)


# ---------- The formal congruence surface and its tower ----------

def formal_congruence_surface(context: ParamContext) -> CatalogEntry:
    """
    Abstract surface X with hyperplane H, canonical K and point pt.

    H^2 = a + b, HK = 2g - 2 - a - b, K^2 = k2, c2(T_X) = 12 chi - k2.
    """
    _require(context, CONGRUENCE_PARAMS)
    variety = build_variety(VarietySpec(
        name="X",
        context=context,
        generators=(GeneratorSpec("H", 1), GeneratorSpec("K", 1), GeneratorSpec("pt", 2)),
        dimension=2,
        rewrites={
            "H**2": "(a + b)*pt",
            "H*K": "(2*g - 2 - a - b)*pt",
            "K**2": "k2*pt",
        },
        integration={"pt": "1"},
        point_class="pt",
        tangent_chern="1 - K + (12*chi - k2)*pt",
    ))
    T = tangent_sheaf(variety)
    sheaves = {
        "Q": from_chern(variety, 2, "1 + H + b*pt", "Q|X"),
        "S": from_chern(variety, 2, "1 + H + a*pt", "S|X"),
        "T": T,
        "Omega": dual(T),
    }
    classes = {"c2TX": T.chern(2), "c2S": sheaves["S"].chern(2), "c2Q": sheaves["Q"].chern(2)}
    return CatalogEntry(variety, sheaves=sheaves, classes=classes)


def sheaf_tj_pullback(host: Variety, h: str = "h", hs: str = "hs") -> Sheaf:
    """T_J of the point-plane incidence J, a (1,1) divisor in P3 x P3*, pulled back to ``host``."""
    one_h = host.one() + host.gen(h)
    one_hs = host.one() + host.gen(hs)
    total = (one_h ** 4) * (one_hs ** 4) * (one_h + host.gen(hs)).inverse()
    return Sheaf(host, 5, total, "T_J")


def tower_ix_ax(X: CatalogEntry) -> Dict[str, CatalogEntry]:
    """
    I_X = P(Q|X) with class h and A_X = P(S|X pulled to I_X) with class hs.

    A and B are the two ramification divisors whose complete intersection
    contains the focal locus and its residual R.
    """
    ix_var = projective_bundle(X.variety, X.sheaf("Q"), "h", name="I_X")
    s_on_ix = pullback(X.sheaf("S"), ix_var)
    ax_var = projective_bundle(ix_var, s_on_ix, "hs", name="A_X")

    ix = CatalogEntry(ix_var, sheaves={"T": tangent_sheaf(ix_var)})
    for key, value in X.classes.items():
        ix.classes[key] = ix_var.pullback(value)

    T_A = tangent_sheaf(ax_var)
    TJ = sheaf_tj_pullback(ax_var)
    ax = CatalogEntry(ax_var, sheaves={"T": T_A, "TJ": TJ})
    for key, value in X.classes.items():
        ax.classes[key] = ax_var.pullback(value)
    h, hs = ax_var.gen("h"), ax_var.gen("hs")
    H, K = ax_var.gen("H"), ax_var.gen("K")
    ax.classes["A"] = h * 2 + H + K
    ax.classes["B"] = hs * 2 + H + K
    ax.classes["Delta0"] = h + hs + H * 2 + K
    ax.classes["KA"] = -T_A.chern(1)
    return {"I_X": ix, "A_X": ax}


def jet_tower(X: CatalogEntry) -> Dict[str, CatalogEntry]:
    """
    D1X = P(Omega_X) with class l1, D2X = P(G) with class l2, and P3 x D2X.

    G has c(G) = c(L1) c(Omega_{D1X/X}).
    """
    d1_var = projective_bundle(X.variety, X.sheaf("Omega"), "l1", name="D1X")
    l1 = d1_var.gen("l1")
    omega_rel = dual(relative_tangent_of_bundle(d1_var, X.sheaf("Omega"), "l1"))
    G = Sheaf(d1_var, 2, (d1_var.one() + l1) * omega_rel.total_chern, "G")
    d2_var = projective_bundle(d1_var, G, "l2", name="D2X")

    p3 = projective_space(3, X.variety.context)
    prod = product_variety(p3.variety, d2_var, name="P3xD2X")
    # I_X, X' and X'' are the zero loci of S(1), S(1)(L1) and S(1)(L1)(L2)
    s_twisted = twist_by_line(pullback(X.sheaf("S"), prod), prod.gen("h"))
    s_l1 = twist_by_line(s_twisted, prod.gen("l1"))
    s_l2 = twist_by_line(s_l1, prod.gen("l2"))
    ix_class = s_twisted.chern(2)
    x1_class = s_l1.chern(2)
    x2_class = s_l2.chern(2)
    c2S = prod.pullback(X.cls("c2S"))

    d1 = CatalogEntry(d1_var, sheaves={"G": G, "Omega_rel": omega_rel})
    d2 = CatalogEntry(d2_var)
    p3d2 = CatalogEntry(prod, classes={"IX": ix_class, "X1": x1_class, "X2": x2_class, "c2S": c2S})
    return {"D1X": d1, "D2X": d2, "P3xD2X": p3d2}


# ---------- Surfaces of degree d in P3 ----------

def hypersurface_sigma(context: ParamContext, dparam: str = "d") -> CatalogEntry:
    """A surface of degree d: h^2 = d pt, c(T) = (1 + h)^4 / (1 + d h)."""
    _require(context, (dparam,))
    variety = build_variety(VarietySpec(
        name="Sigma",
        context=context,
        generators=(GeneratorSpec("h", 1), GeneratorSpec("pt", 2)),
        dimension=2,
        rewrites={"h**2": f"{dparam}*pt"},
        integration={"pt": "1"},
        point_class="pt",
    ))
    h = variety.gen("h")
    d = context.param(dparam)
    variety.attach_tangent((variety.one() + h) ** 4 * (variety.one() + h * d).inverse())
    T = tangent_sheaf(variety)
    omega2 = twist_by_line(dual(T), h * 2).named("Omega(2)")
    P1 = principal_parts(line_bundle(variety, h, "O(1)"))
    return CatalogEntry(variety, sheaves={"T": T, "Omega(2)": omega2, "P1": P1}, classes={"h": h})


def tangent_space_y(sigma: CatalogEntry, dparam: str = "d") -> CatalogEntry:
    """
    Y = P(Omega_Sigma(2)) with class l; c(Q) = c(P1(O(1))) / c(Omega_{Y/Sigma}(l - h)).

    [Y'] and [Y2] are geometric inputs, not derived in the ring:
    [Y'] = 4 (d - 2) h pulls back the parabolic curve, Sigma cut by its Hessian
    of degree 4 (d - 2); [Y2] is the zero locus of the second fundamental form,
    a section of O_Y(2 l + (d - 4) h). [Y1] = m l + n h with m = (d + 2)(d - 3)
    from Hurwitz and n solved from c2(Q|Y1) = d (d - 2)(d - 3)(d + 3).
    """
    context = sigma.variety.context
    y_var = projective_bundle(sigma.variety, sigma.sheaf("Omega(2)"), "l", name="Y")
    l, h = y_var.gen("l"), y_var.gen("h")
    d = context.param(dparam)
    relative = relative_tangent_of_bundle(y_var, sigma.sheaf("Omega(2)"), "l")
    omega_rel = twist_by_line(dual(relative), l - h)
    quotient = VirtualSheaf(pullback(sigma.sheaf("P1"), y_var), omega_rel)
    Q = Sheaf(y_var, 2, quotient.total_chern.truncate(2), "Q|Y")
    S = dual(Sheaf(y_var, 2, Q.total_chern.inverse().truncate(2), "S*")).named("S|Y")

    y_prime = h * (d - 2) * 4
    y_two = l * 2 + h * (d - 4)
    m = (d + 2) * (d - 3)
    # unknown n enters linearly through the integral of (m l + n h) c2(Q)
    with_n = y_var.integrate((l * m) * Q.chern(2))
    per_n = y_var.integrate(h * Q.chern(2))
    target = d * (d - 2) * (d - 3) * (d + 3)
    (n_value,) = solve_linear(
        ["n"],
        [with_n.as_expr() + per_n.as_expr() * Symbol("n") - target.as_expr()],
        context,
    ).values()
    y_one = l * m + h * n_value
    logger.debug("Forced class of Y1 on Y: %s", y_one)

    classes = {
        "l": l,
        "h": h,
        "pt": y_var.gen("pt"),
        "Yp": y_prime,
        "Y1": y_one,
        "Y2": y_two,
        "KY": -y_var.tangent_chern.component(1),
    }
    sheaves = {"Q": Q, "S": S, "Omega_rel(l-h)": omega_rel, "T": tangent_sheaf(y_var)}
    return CatalogEntry(y_var, sheaves=sheaves, classes=classes)


def bitangent_space_t(g13: CatalogEntry, dparam: str = "d", printed_c4: bool = False) -> CatalogEntry:
    """
    T = P(Sym^2 Q*) over G(1,3) with class t, and the rank-4 virtual sheaf
    R = Sym^d Q - Sym^(d-4) Q (-2t) whose top class is the bitangent locus.

    The symmetric powers stop at c4, so R is kept to c1..c4; these depend only
    on the degree <= 4 parts of both terms and R has rank 4.
    """
    context = g13.variety.context
    sym2_dual = sym_power_concrete(dual(g13.sheaf("Q")), 2).named("Sym2Q*")
    t_var = projective_bundle(g13.variety, sym2_dual, "t", name="T")
    t = t_var.gen("t")
    d = context.param(dparam)
    Q = pullback(g13.sheaf("Q"), t_var)
    S = pullback(g13.sheaf("S"), t_var)
    sym_d = sym_power_rank2_symbolic(Q, d, printed=printed_c4)
    sym_d4 = sym_power_rank2_symbolic(Q, d - 4, printed=printed_c4)
    R_virtual = VirtualSheaf(sym_d, twist_by_line(sym_d4, t * -2, up_to=4), "R")
    R = Sheaf(t_var, R_virtual.concrete_rank(), R_virtual.total_chern.truncate(4), "R")
    classes = {
        "t": t,
        "q1": t_var.gen("q1"),
        "alpha": t_var.pullback(g13.cls("alpha")),
        "beta": t_var.pullback(g13.cls("beta")),
        "X1": R.chern(4),
        "KT": -t_var.tangent_chern.component(1),
    }
    sheaves = {"Q": Q, "S": S, "R": R, "T": tangent_sheaf(t_var), "Sym2Q*": sym2_dual}
    return CatalogEntry(t_var, sheaves=sheaves, classes=classes)


# ---------- Symmetric square of a curve ----------

def sym_square_curve(
    context: ParamContext,
    dparam: str = "d",
    pparam: str = "p",
    p_delta: str = "2",
    canonical: Optional[str] = None,
    name: str = "C2",
) -> CatalogEntry:
    """
    C^(2) of a genus-p curve embedded with degree d, with the secant bundle Q.

    P^2 = 1, P.Delta = ``p_delta``, Delta^2 = 4 - 4p. The defaults are the
    values forced by the bidegree and genus of the bisecant congruence; the
    printed table (P.Delta = 1, K = (2 - 2p) P + Delta/2) is built by passing
    them explicitly.

    The Euler class (1 - p)(3 - 2p) pt is an input: Macdonald's topological
    Euler number of C^(2), not a consequence of the multiplication table.
    """
    _require(context, (dparam, pparam))
    variety = build_variety(VarietySpec(
        name=name,
        context=context,
        generators=(GeneratorSpec("P", 1), GeneratorSpec("Delta", 1), GeneratorSpec("pt", 2)),
        dimension=2,
        rewrites={
            "P**2": "pt",
            "P*Delta": f"({p_delta})*pt",
            "Delta**2": f"(4 - 4*{pparam})*pt",
        },
        integration={"pt": "1"},
        point_class="pt",
    ))
    if canonical is None:
        canonical = f"(2*{pparam} - 2)*P - Delta/2"
    K = variety.normal_form(canonical)
    euler = variety.normal_form(f"(1 - {pparam})*(3 - 2*{pparam})*pt")
    variety.attach_tangent(variety.one() - K + euler)
    Q = from_chern(variety, 2, f"1 + {dparam}*P - Delta/2 + {dparam}*({dparam} - 1)/2*pt", "Q")
    classes = {"P": variety.gen("P"), "Delta": variety.gen("Delta"), "K": K}
    return CatalogEntry(variety, sheaves={"Q": Q, "T": tangent_sheaf(variety)}, classes=classes)
