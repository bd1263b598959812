"""
Euler characteristics and Hilbert polynomials by Hirzebruch-Riemann-Roch.

chi(E) = integral of ch(E) td(T_V). A Hilbert polynomial in the formal
twist T is read off without putting T into the parameter context:

    chi(E(T h)) = sum_j T^j / j! * integral of ch(E) h^j td(T_V)
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from core.chow import GradedClass, Variety
from core.exact import ParamPoly, RationalLike, to_rational
from core.sheaf import AnySheaf, chern_character, line_bundle, todd, tangent_sheaf

logger = logging.getLogger(__name__)


class HilbertPolynomialError(ValueError):
    """Wrong degree in T for the requested invariant extraction."""


def _variety(host) -> Variety:
    return host if isinstance(host, Variety) else host.variety


def _todd_tangent(variety: Variety) -> GradedClass:
    return todd(tangent_sheaf(variety))


def euler_characteristic(host, E: AnySheaf, twist: Optional[GradedClass] = None) -> ParamPoly:
    """
    chi(E (x) O(twist)) on ``host``; virtual sheaves contribute plus minus minus.

    Raises:
        SheafError: If E has symbolic rank.
    """
    variety = _variety(host)
    ch = chern_character(E)
    if twist is not None and not twist.is_zero():
        ch = ch * twist.exp()
    return variety.integrate(ch * _todd_tangent(variety))


def line_bundle_chi(host, divisor: GradedClass) -> ParamPoly:
    """chi(O(D)) for a degree-1 class D."""
    variety = _variety(host)
    return euler_characteristic(variety, line_bundle(variety, divisor))


@dataclass(frozen=True)
class HilbertPolynomial:
    """chi as a polynomial in the twist T; ``coefficients[j]`` multiplies T^j."""
    coefficients: Tuple[ParamPoly, ...]

    @property
    def degree(self) -> int:
        for j in range(len(self.coefficients) - 1, -1, -1):
            if not self.coefficients[j].is_zero():
                return j
        return -1

    def coefficient(self, j: int) -> ParamPoly:
        if j < len(self.coefficients):
            return self.coefficients[j]
        return self.coefficients[0].context.zero

    def _combine(self, other: "HilbertPolynomial", sign: int) -> "HilbertPolynomial":
        size = max(len(self.coefficients), len(other.coefficients))
        return HilbertPolynomial(tuple(
            self.coefficient(j) + other.coefficient(j) * sign for j in range(size)
        ))

    def __add__(self, other: "HilbertPolynomial") -> "HilbertPolynomial":
        return self._combine(other, 1)

    def __sub__(self, other: "HilbertPolynomial") -> "HilbertPolynomial":
        return self._combine(other, -1)

    def __neg__(self) -> "HilbertPolynomial":
        return HilbertPolynomial(tuple(-c for c in self.coefficients))

    def __call__(self, value: RationalLike) -> ParamPoly:
        point = to_rational(value)
        total = self.coefficients[0].context.zero
        for j, coeff in enumerate(self.coefficients):
            total = total + coeff * point ** j
        return total

    def subs(self, assignment) -> "HilbertPolynomial":
        return HilbertPolynomial(tuple(c.subs(assignment) for c in self.coefficients))

    def __str__(self) -> str:
        parts = []
        for j, coeff in enumerate(self.coefficients):
            if coeff.is_zero():
                continue
            factor = "" if j == 0 else ("*T" if j == 1 else f"*T**{j}")
            parts.append(f"({coeff}){factor}")
        return " + ".join(parts) or "0"


def hilbert_polynomial(
    host,
    E: AnySheaf,
    h: GradedClass,
    twist: Optional[GradedClass] = None,
) -> HilbertPolynomial:
    """
    chi(E (x) O(twist + T h)) as an exact polynomial in T.

    Raises:
        HilbertPolynomialError: If h is not a degree-1 class.
    """
    variety = _variety(host)
    if not h.is_homogeneous(1) or h.is_zero():
        raise HilbertPolynomialError(f"Polarization must be a nonzero degree-1 class, got {h}")
    ch = chern_character(E)
    if twist is not None and not twist.is_zero():
        ch = ch * twist.exp()
    weighted = ch * _todd_tangent(variety)
    coefficients: List[ParamPoly] = []
    power = variety.one()
    for j in range(variety.dimension + 1):
        coefficients.append(variety.integrate(weighted * power) / math.factorial(j))
        power = power * h
    return HilbertPolynomial(tuple(coefficients))


def combine_hilbert(terms: Sequence[Tuple[int, HilbertPolynomial]]) -> HilbertPolynomial:
    """Signed sum of Hilbert polynomials, e.g. the terms of an exact sequence."""
    if not terms:
        raise HilbertPolynomialError("Nothing to combine")
    sign, total = terms[0]
    total = total if sign > 0 else -total
    for sign, hp in terms[1:]:
        total = total + hp if sign > 0 else total - hp
    return total


@dataclass(frozen=True)
class SurfaceInvariants:
    degree: ParamPoly
    canonical_degree: ParamPoly        # K.h
    sectional_genus: ParamPoly
    chi_structure: ParamPoly


def surface_invariants_from_hilbert(hp: HilbertPolynomial, dualizing: bool = True) -> SurfaceInvariants:
    """
    Degree, K.h, sectional genus and chi(O) of a polarized surface.

    ``hp`` is chi(omega(T h)) when ``dualizing`` is set, chi(O(T h)) otherwise;
    by Riemann-Roch the linear coefficient is +K.h/2 or -K.h/2 accordingly.

    Raises:
        HilbertPolynomialError: If hp does not have degree 2 in T.
    """
    if hp.degree != 2:
        raise HilbertPolynomialError(f"Surface invariants need a degree-2 Hilbert polynomial, got degree {hp.degree}")
    degree = hp.coefficient(2) * 2
    linear = hp.coefficient(1) * 2
    k_dot_h = linear if dualizing else -linear
    genus = (k_dot_h + degree) / 2 + 1
    return SurfaceInvariants(
        degree=degree,
        canonical_degree=k_dot_h,
        sectional_genus=genus,
        chi_structure=hp.coefficient(0),
    )


# ---------- Complete intersections of two divisors ----------

def koszul_chi(host, D: GradedClass, A: GradedClass, B: GradedClass) -> ParamPoly:
    """chi(O_M(D)) for M = A.B from the Koszul resolution."""
    variety = _variety(host)
    return (
        line_bundle_chi(variety, D)
        - line_bundle_chi(variety, D - A)
        - line_bundle_chi(variety, D - B)
        + line_bundle_chi(variety, D - A - B)
    )


def restricted_chi(host, D: GradedClass, A: GradedClass, B: GradedClass) -> ParamPoly:
    """
    chi(O_M(D)) by HRR on M itself: integral of A B ch(O(D)) td(T_V) / (td(O(A)) td(O(B))).
    """
    variety = _variety(host)
    td_normal = todd(line_bundle(variety, A)) * todd(line_bundle(variety, B))
    integrand = A * B * D.exp() * _todd_tangent(variety) * td_normal.inverse()
    value = variety.integrate(integrand)
    logger.debug("Restricted chi on %s computed", variety.name)
    return value
