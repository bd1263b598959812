"""
Chern-class calculus on catalog varieties.

A Sheaf is a rank (an int, or a ParamPoly for symbolic symmetric powers) and a
total Chern class on a host Variety. Differences stay formal as VirtualSheaf
values; their Chern classes are computed by series division when asked for.

Characteristic classes go through power sums: ch_k = p_k / k! and
td = exp(sum_k tau_k p_k) with tau_1 = 1/2 and tau_2k = -B_2k / (2k (2k)!),
so no closed form is needed per degree.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

import sympy

from core.chow import GradedClass, Variety, alternate_signs
from core.exact import ParamPoly, to_rational

logger = logging.getLogger(__name__)

Rank = Union[int, ParamPoly]

SUM = "sum"
DIFFERENCE = "difference"
TENSOR = "tensor"
COMBINE_OPS = (SUM, DIFFERENCE, TENSOR)


class SheafError(ValueError):
    """Rank preconditions, symbolic ranks where concrete ones are needed."""


def _normalize_rank(rank: Rank) -> Rank:
    if isinstance(rank, ParamPoly) and rank.is_constant():
        value = rank.constant_value()
        if int(sympy.QQ.denom(value)) == 1:
            return int(sympy.QQ.numer(value))
        raise SheafError(f"Non-integral rank {rank}")
    return rank


@dataclass(frozen=True, eq=True)
class Sheaf:
    host: Variety
    rank: Rank
    total_chern: GradedClass
    name: str = ""

    def __post_init__(self):
        if self.total_chern.variety is not self.host:
            raise SheafError(f"Chern class of {self.name or 'sheaf'} does not live on {self.host.name}")
        if self.total_chern.constant_term() != 1:
            raise SheafError(f"Total Chern class of {self.name or 'sheaf'} must start with 1")
        object.__setattr__(self, "rank", _normalize_rank(self.rank))

    def chern(self, i: int) -> GradedClass:
        return self.total_chern.component(i)

    @property
    def is_concrete(self) -> bool:
        return isinstance(self.rank, int)

    def concrete_rank(self) -> int:
        if not self.is_concrete:
            raise SheafError(f"{self.name or 'sheaf'} has symbolic rank {self.rank}")
        return self.rank

    def named(self, name: str) -> "Sheaf":
        return Sheaf(self.host, self.rank, self.total_chern, name)


@dataclass(frozen=True)
class VirtualSheaf:
    """Formal difference ``plus - minus`` on one host."""
    plus: Sheaf
    minus: Sheaf
    name: str = ""

    def __post_init__(self):
        if self.plus.host is not self.minus.host:
            raise SheafError("Virtual sheaf parts live on different varieties")

    @property
    def host(self) -> Variety:
        return self.plus.host

    @property
    def rank(self) -> Rank:
        left, right = self.plus.rank, self.minus.rank
        if isinstance(left, int) and isinstance(right, int):
            return left - right
        context = self.host.context
        return _normalize_rank(context.coerce(left) - context.coerce(right))

    @property
    def total_chern(self) -> GradedClass:
        return self.plus.total_chern * self.minus.total_chern.inverse()

    def chern(self, i: int) -> GradedClass:
        return self.total_chern.component(i)

    @property
    def is_concrete(self) -> bool:
        return isinstance(self.rank, int)

    def concrete_rank(self) -> int:
        rank = self.rank
        if not isinstance(rank, int):
            raise SheafError(f"{self.name or 'virtual sheaf'} has symbolic rank {rank}")
        return rank


AnySheaf = Union[Sheaf, VirtualSheaf]


# ---------- Constructors ----------

def trivial(host: Variety, rank: int = 1, name: str = "") -> Sheaf:
    return Sheaf(host, rank, host.one(), name or f"O^{rank}")


def zero_sheaf(host: Variety) -> Sheaf:
    return Sheaf(host, 0, host.one(), "0")


def line_bundle(host: Variety, c1: Union[GradedClass, str], name: str = "") -> Sheaf:
    cls = host.normal_form(c1) if isinstance(c1, str) else c1
    if not cls.is_homogeneous(1):
        raise SheafError(f"First Chern class must have degree 1, got {cls}")
    return Sheaf(host, 1, host.one() + cls, name or f"O({cls})")


def from_chern(host: Variety, rank: Rank, total: Union[GradedClass, str], name: str = "") -> Sheaf:
    cls = host.normal_form(total) if isinstance(total, str) else total
    return Sheaf(host, rank, cls, name)


def tangent_sheaf(host: Variety) -> Sheaf:
    return Sheaf(host, host.dimension, host.tangent_chern, f"T_{host.name}")


def pullback(E: AnySheaf, target: Variety) -> AnySheaf:
    """Pulls a sheaf back along a tower stage or product projection."""
    if isinstance(E, VirtualSheaf):
        return VirtualSheaf(pullback(E.plus, target), pullback(E.minus, target), E.name)
    return Sheaf(target, E.rank, target.pullback(E.total_chern), E.name)


def _parts(E: AnySheaf) -> Tuple[Sheaf, Sheaf]:
    if isinstance(E, VirtualSheaf):
        return E.plus, E.minus
    return E, zero_sheaf(E.host)


# ---------- Operations ----------

def dual(E: AnySheaf) -> AnySheaf:
    """
    c_i(E^dual) = (-1)^i c_i(E).

    Raises:
        SheafError: If E has symbolic rank.
    """
    if isinstance(E, VirtualSheaf):
        return VirtualSheaf(dual(E.plus), dual(E.minus), E.name)
    E.concrete_rank()
    name = E.name[:-1] if E.name.endswith("*") else (f"{E.name}*" if E.name else "")
    return Sheaf(E.host, E.rank, alternate_signs(E.total_chern), name)


def _binomial(top: ParamPoly, k: int) -> ParamPoly:
    """binom(top, k) as a polynomial in the (possibly symbolic) top."""
    result = top.context.one
    for i in range(k):
        result = result * (top - i)
    return result / math.factorial(k)


def twist_by_line(E: AnySheaf, t: GradedClass, up_to: Optional[int] = None) -> AnySheaf:
    """
    Chern classes of E tensor L with c1(L) = t:

        c_k(E(L)) = sum_i binom(r - i, k - i) c_i(E) t^(k-i)

    with binomials taken as polynomials in the rank, so symbolic ranks work.
    """
    if isinstance(E, VirtualSheaf):
        return VirtualSheaf(twist_by_line(E.plus, t, up_to), twist_by_line(E.minus, t, up_to), E.name)
    host = E.host
    if t.variety is not host:
        raise SheafError(f"Twisting class lives on {t.variety.name}, sheaf on {host.name}")
    if not t.is_zero() and not t.is_homogeneous(1):
        raise SheafError(f"Twist needs a degree-1 class, got {t}")
    limit = host.dimension if up_to is None else min(up_to, host.dimension)
    rank = host.context.coerce(E.rank)
    powers = [host.one()]
    for _ in range(limit):
        powers.append(powers[-1] * t)
    chern = [host.one()] + [E.chern(i) for i in range(1, limit + 1)]
    total = host.one()
    for k in range(1, limit + 1):
        ck = host.zero()
        for i in range(k + 1):
            ci = chern[i]
            if ci.is_zero():
                continue
            ck = ck + ci * powers[k - i] * _binomial(rank - i, k - i)
        total = total + ck
    return Sheaf(host, E.rank, total, E.name)


def direct_sum(E: Sheaf, F: Sheaf) -> Sheaf:
    rank = E.rank + F.rank if E.is_concrete and F.is_concrete else (
        E.host.context.coerce(E.rank) + F.host.context.coerce(F.rank)
    )
    return Sheaf(E.host, rank, E.total_chern * F.total_chern)


def combine(E: AnySheaf, F: AnySheaf, op: str) -> AnySheaf:
    """
    Whitney sum, formal difference or tensor product.

    Raises:
        SheafError: On mixed hosts, unknown operations or a tensor with symbolic rank.
    """
    if E.host is not F.host:
        raise SheafError(f"Cannot combine sheaves on {E.host.name} and {F.host.name}")
    if op not in COMBINE_OPS:
        raise SheafError(f"Unknown combine operation {op!r}; expected one of {COMBINE_OPS}")
    e_plus, e_minus = _parts(E)
    f_plus, f_minus = _parts(F)
    if op == SUM:
        plus, minus = direct_sum(e_plus, f_plus), direct_sum(e_minus, f_minus)
    elif op == DIFFERENCE:
        plus, minus = direct_sum(e_plus, f_minus), direct_sum(e_minus, f_plus)
    else:
        rank = E.concrete_rank() * F.concrete_rank()
        ch = chern_character(E) * chern_character(F)
        return chern_from_character(ch, rank)
    if minus.rank == 0 and minus.total_chern == minus.host.one():
        return plus
    return VirtualSheaf(plus, minus)


def determinant(E: Sheaf) -> Sheaf:
    return Sheaf(E.host, 1, E.host.one() + E.chern(1), f"det {E.name}".strip())


# ---------- Power sums, Chern character, Todd class ----------

def power_sums(E: AnySheaf, up_to: int) -> List[GradedClass]:
    """p_1..p_up_to of the Chern roots, by Newton's identities."""
    host = E.host
    total = E.total_chern
    e = [host.one()] + [total.component(i) for i in range(1, up_to + 1)]
    p: List[GradedClass] = [host.zero()]
    for k in range(1, up_to + 1):
        acc = e[k] * ((-1) ** (k - 1) * k)
        for i in range(1, k):
            acc = acc + e[i] * p[k - i] * ((-1) ** (i - 1))
        p.append(acc)
    return p[1:]


def chern_character(E: AnySheaf, up_to: Optional[int] = None) -> GradedClass:
    """
    ch(E) = rank + sum_k p_k / k!, truncated at ``up_to`` (default: host dimension).

    Raises:
        SheafError: If E has symbolic rank.
    """
    rank = E.concrete_rank()
    host = E.host
    limit = host.dimension if up_to is None else min(up_to, host.dimension)
    ch = host.scalar(rank)
    for k, pk in enumerate(power_sums(E, limit), start=1):
        ch = ch + pk / math.factorial(k)
    return ch


def chern_from_character(ch: GradedClass, rank: int) -> Sheaf:
    """
    Inverts the Newton relations: e_k = (1/k) sum_i (-1)^(i-1) e_(k-i) p_i.

    Raises:
        SheafError: If the degree-0 part of ``ch`` differs from ``rank``.
    """
    host = ch.variety
    if ch.constant_term() != rank:
        raise SheafError(f"Chern character starts with {ch.constant_term()}, expected rank {rank}")
    p = [host.zero()] + [ch.component(k) * math.factorial(k) for k in range(1, host.dimension + 1)]
    e = [host.one()]
    for k in range(1, host.dimension + 1):
        acc = host.zero()
        for i in range(1, k + 1):
            acc = acc + e[k - i] * p[i] * ((-1) ** (i - 1))
        e.append(acc / k)
    total = host.zero()
    for ek in e:
        total = total + ek
    return Sheaf(host, rank, total)


def _todd_log_coefficient(k: int):
    if k == 1:
        return to_rational("1/2")
    if k % 2 == 1:
        return to_rational(0)
    return -to_rational(sympy.bernoulli(k)) / (k * math.factorial(k))


def todd(E: AnySheaf, up_to: Optional[int] = None) -> GradedClass:
    """td(E) = exp(sum_k tau_k p_k); multiplicative, so virtual sheaves divide."""
    host = E.host
    limit = host.dimension if up_to is None else min(up_to, host.dimension)
    exponent = host.zero()
    for k, pk in enumerate(power_sums(E, limit), start=1):
        exponent = exponent + pk * _todd_log_coefficient(k)
    return exponent.exp().truncate(limit)


# ---------- Symmetric powers ----------

def sym_power_concrete(E: Sheaf, n: int) -> Sheaf:
    """
    Sym^n of a rank-2 sheaf, Chern roots {i a + (n - i) b}.

    Computed from the Clebsch-Gordan splitting
    E (x) Sym^(n-1) E = Sym^n E + det E (x) Sym^(n-2) E on Chern characters.

    Raises:
        SheafError: If E is not of rank 2 or n < 0.
    """
    if E.rank != 2:
        raise SheafError(f"Symmetric powers need a rank-2 sheaf, got rank {E.rank}")
    if n < 0:
        raise SheafError(f"Negative symmetric power {n}")
    host = E.host
    if n == 0:
        return trivial(host, 1)
    if n == 1:
        return E
    ch_e = chern_character(E)
    ch_det = chern_character(determinant(E))
    previous, current = host.one(), ch_e
    for _ in range(2, n + 1):
        previous, current = current, ch_e * current - ch_det * previous
    return chern_from_character(current, n + 1).named(f"Sym^{n} {E.name}".strip())


# Closed forms for c_k(Sym^d E), E of rank 2, as (coefficient text in d, monomial in c1 c2).
SYM_CLOSED_FORMS: Dict[int, Tuple[Tuple[str, Tuple[int, int]], ...]] = {
    1: (("d*(d+1)/2", (1, 0)),),
    2: (
        ("d*(d-1)*(d+1)*(3*d+2)/24", (2, 0)),
        ("d*(d+1)*(d+2)/6", (0, 1)),
    ),
    3: (
        ("d**2*(d-1)*(d-2)*(d+1)**2/48", (3, 0)),
        ("d**2*(d-1)*(d+2)*(d+1)/12", (1, 1)),
    ),
    4: (
        ("d*(d-1)*(d-2)*(d-3)*(d+1)*(15*d**3+15*d**2-10*d-8)/5760", (4, 0)),
        ("d*(d-1)*(d-2)*(d+2)*(d+1)*(15*d**2-5*d-12)/720", (2, 1)),
        ("d*(d-1)*(d-2)*(d+1)*(d+2)*(5*d+12)/360", (0, 2)),
    ),
}

# c4 exactly as it is printed in the source: denominator 1570 and no (d+2) on c2^2.
SYM_PRINTED_C4: Tuple[Tuple[str, Tuple[int, int]], ...] = (
    ("d*(d-1)*(d-2)*(d-3)*(d+1)*(15*d**3+15*d**2-10*d-8)/1570", (4, 0)),
    ("d*(d-1)*(d-2)*(d+2)*(d+1)*(15*d**2-5*d-12)/720", (2, 1)),
    ("d*(d-1)*(d-2)*(d+1)*(5*d+12)/360", (0, 2)),
)


def sym_closed_form_coefficients(
    k: int,
    exponent: ParamPoly,
    printed: bool = False,
) -> List[Tuple[ParamPoly, Tuple[int, int]]]:
    """Coefficient polynomials of c_k(Sym^exponent) with d composed to ``exponent``."""
    forms = SYM_PRINTED_C4 if (printed and k == 4) else SYM_CLOSED_FORMS[k]
    context = exponent.context
    local = sympy.Symbol("d")
    out = []
    for text, monomial in forms:
        expr = sympy.expand(sympy.sympify(text).subs(local, exponent.as_expr()))
        out.append((context.from_expr(expr), monomial))
    return out


def sym_power_rank2_symbolic(
    E: Sheaf,
    dparam: Union[str, ParamPoly],
    up_to: int = 4,
    printed: bool = False,
) -> Sheaf:
    """
    Sym^d of a rank-2 sheaf for symbolic d (or a polynomial in d such as d - 4).

    c1..c3 are the printed closed forms; c4 is the corrected one unless
    ``printed`` is set. Only c1..c_up_to are produced: on a host of larger
    dimension the total class stops there and higher classes read as 0.

    Raises:
        SheafError: If E is not of rank 2 or up_to exceeds 4.
    """
    if E.rank != 2:
        raise SheafError(f"Symmetric powers need a rank-2 sheaf, got rank {E.rank}")
    if up_to > 4:
        raise SheafError(f"Closed forms are available up to c4, requested c{up_to}")
    host = E.host
    exponent = host.context.param(dparam) if isinstance(dparam, str) else host.context.coerce(dparam)
    c1, c2 = E.chern(1), E.chern(2)
    total = host.one()
    for k in range(1, min(up_to, host.dimension) + 1):
        for coeff, (i, j) in sym_closed_form_coefficients(k, exponent, printed=printed):
            total = total + (c1 ** i) * (c2 ** j) * coeff
    return Sheaf(host, exponent + 1, total, f"Sym^({exponent}) {E.name}".strip())


# ---------- Degeneracy loci and bundle tangents ----------

def _determinant(matrix: Sequence[Sequence[GradedClass]]) -> GradedClass:
    size = len(matrix)
    if size == 1:
        return matrix[0][0]
    total = matrix[0][0].variety.zero()
    for col in range(size):
        entry = matrix[0][col]
        if entry.is_zero():
            continue
        minor = [row[:col] + row[col + 1:] for row in matrix[1:]]
        term = entry * _determinant(minor)
        total = total + term if col % 2 == 0 else total - term
    return total


def porteous(V: AnySheaf, e: int, f: int, r: int) -> GradedClass:
    """
    Class of the locus where a map E -> F of ranks e, f drops to rank <= r:

        det( c_(f - r + j - i)(F - E) ),  an (e - r) x (e - r) determinant.

    Raises:
        SheafError: If r >= min(e, f).
    """
    if r < 0 or r >= min(e, f):
        raise SheafError(f"Porteous needs 0 <= r < min(e, f); got r={r}, e={e}, f={f}")
    host = V.host
    total = V.total_chern

    def c(k: int) -> GradedClass:
        if k < 0:
            return host.zero()
        if k == 0:
            return host.one()
        return total.component(k)

    size = e - r
    matrix = [[c(f - r + j - i) for j in range(size)] for i in range(size)]
    return _determinant(matrix)


def relative_tangent_of_bundle(bundle: Variety, E: Sheaf, zeta: str) -> Sheaf:
    """
    T of P(E) over its base, from the Euler sequence
    0 -> O -> pi^* E^dual (zeta) -> T_rel -> 0.
    """
    r = E.concrete_rank()
    lifted = pullback(dual(E), bundle)
    twisted = twist_by_line(lifted, bundle.gen(zeta))
    total = twisted.total_chern.truncate(r - 1)
    return Sheaf(bundle, r - 1, total, f"T_{bundle.name}/{E.host.name}")


def principal_parts(L: Sheaf) -> Sheaf:
    """P^1(L) from 0 -> Omega (x) L -> P^1(L) -> L -> 0."""
    if L.rank != 1:
        raise SheafError(f"Principal parts are built for line bundles, got rank {L.rank}")
    host = L.host
    omega = dual(tangent_sheaf(host))
    twisted = twist_by_line(omega, L.chern(1))
    return Sheaf(host, host.dimension + 1, twisted.total_chern * L.total_chern, f"P1({L.name})")
