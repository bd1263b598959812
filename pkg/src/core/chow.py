"""
Finitely presented graded rings with a top-degree integration functional.

Every ring used by the engine is a "rewrite tower": a base given by an
explicit multiplication table on a few atoms, extended by products and by
projective-bundle generators that each carry one Grothendieck power rewrite.
Normal forms are computed by repeated divisor-rewriting plus per-block degree
truncation (a monomial dies as soon as the part living on some factor or tower
stage exceeds that stage's dimension).

Projectivization follows the rank-one quotient convention: on P(E) the
tautological quotient class z satisfies
    z^r = c1 z^(r-1) - c2 z^(r-2) + ... - (-1)^r c_r.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import sympy
from sympy import Poly, Symbol, sympify
from sympy.core.sympify import SympifyError
from sympy.polys.polyerrors import PolynomialError

from core.exact import ParamContext, ParamPoly, Rational, RationalLike

logger = logging.getLogger(__name__)

Monomial = Tuple[int, ...]
RawClass = Dict[Monomial, ParamPoly]
Coefficient = Union[ParamPoly, int, Rational]


class ChowRingError(ValueError):
    """Invalid presentation, unknown generator or mixed-variety operands."""


@dataclass(frozen=True)
class GeneratorSpec:
    """A ring generator and its codimension grading."""
    name: str
    degree: int

    def __post_init__(self):
        if not self.name.isidentifier():
            raise ChowRingError(f"Invalid generator name: {self.name!r}")
        if self.degree < 1:
            raise ChowRingError(f"Generator {self.name} must have degree >= 1, got {self.degree}")


@dataclass
class VarietySpec:
    """
    Text-level presentation accepted by :func:`build_variety`.

    Attributes:
        rewrites: reducible monomial text -> replacement text, e.g. ``{"H**2": "(a+b)*pt"}``
        integration: top-degree monomial text -> integral text
        tangent_chern: total Chern class text of the tangent bundle, or None
        point_class: class text whose integral must be 1
        blocks: optional extra truncation blocks (generator names, max degree)
    """
    name: str
    context: ParamContext
    generators: Sequence[GeneratorSpec]
    dimension: int
    rewrites: Mapping[str, str] = field(default_factory=dict)
    integration: Mapping[str, str] = field(default_factory=dict)
    point_class: Optional[str] = None
    tangent_chern: Optional[str] = None
    blocks: Sequence[Tuple[Sequence[str], int]] = ()


# ---------- Raw expression parsing ----------

def _parse_raw(
    text: Union[str, int],
    symbol_names: Sequence[str],
    context: ParamContext,
) -> Dict[Monomial, ParamPoly]:
    """Expands text into {exponent vector over symbol_names: coefficient}."""
    local = dict(context.symbols())
    class_symbols = [Symbol(name) for name in symbol_names]
    local.update({sym.name: sym for sym in class_symbols})
    try:
        expr = sympify(str(text), locals=local)
    except (SympifyError, SyntaxError, TypeError) as exc:
        raise ChowRingError(f"Cannot parse class expression {text!r}") from exc

    known = set(local)
    unknown = sorted(str(s) for s in expr.free_symbols if str(s) not in known)
    if unknown:
        raise ChowRingError(f"Unknown generator(s) {unknown} in {text!r}")

    used = [sym for sym in class_symbols if sym in expr.free_symbols]
    if not used:
        zero = tuple(0 for _ in symbol_names)
        value = context.from_expr(sympy.expand(expr))
        return {zero: value} if value else {}

    try:
        poly = Poly(expr, *used)
    except PolynomialError as exc:
        raise ChowRingError(f"Class expression is not polynomial in generators: {text!r}") from exc

    positions = [symbol_names.index(sym.name) for sym in used]
    out: Dict[Monomial, ParamPoly] = {}
    for exps, coeff in poly.as_dict().items():
        monomial = [0] * len(symbol_names)
        for pos, exp in zip(positions, exps):
            monomial[pos] = exp
        value = context.from_expr(sympy.expand(coeff))
        if value:
            out[tuple(monomial)] = value
    return out


def _mono_add(m1: Monomial, m2: Monomial) -> Monomial:
    return tuple(a + b for a, b in zip(m1, m2))


def _divides(key: Monomial, m: Monomial) -> bool:
    return all(a <= b for a, b in zip(key, m))


# ---------- Classes ----------

class GradedClass:
    """
    Element of a Variety's ring: normal-form monomials with ParamPoly coefficients.

    Instances are created through Variety methods and are treated as immutable.
    """

    __slots__ = ("variety", "_terms")

    def __init__(self, variety: "Variety", terms: RawClass):
        self.variety = variety
        self._terms = {m: c for m, c in terms.items() if c}

    # ----- arithmetic -----

    def _check(self, other: "GradedClass") -> None:
        if other.variety is not self.variety:
            raise ChowRingError(
                f"Mixed-variety operands: {self.variety.name} and {other.variety.name}"
            )

    def _lift(self, other) -> "GradedClass":
        if isinstance(other, GradedClass):
            self._check(other)
            return other
        return self.variety.scalar(other)

    def __add__(self, other) -> "GradedClass":
        other = self._lift(other)
        terms = dict(self._terms)
        for m, c in other._terms.items():
            terms[m] = terms[m] + c if m in terms else c
        return GradedClass(self.variety, terms)

    __radd__ = __add__

    def __neg__(self) -> "GradedClass":
        return GradedClass(self.variety, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "GradedClass":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "GradedClass":
        return self._lift(other) - self

    def __mul__(self, other) -> "GradedClass":
        if not isinstance(other, GradedClass):
            factor = self.variety.context.coerce(other)
            return GradedClass(self.variety, {m: c * factor for m, c in self._terms.items()})
        self._check(other)
        return self.variety.mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other: RationalLike) -> "GradedClass":
        return GradedClass(self.variety, {m: c / other for m, c in self._terms.items()})

    def __pow__(self, exponent: int) -> "GradedClass":
        if not isinstance(exponent, int) or exponent < 0:
            raise ChowRingError(f"Only non-negative integer powers are defined: {exponent!r}")
        result = self.variety.one()
        for _ in range(exponent):
            result = result * self
        return result

    # ----- comparison -----

    def __eq__(self, other) -> bool:
        if isinstance(other, GradedClass):
            return other.variety is self.variety and self._terms == other._terms
        if isinstance(other, (int, ParamPoly)):
            return self == self.variety.scalar(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((id(self.variety), frozenset(self._terms.items())))

    # ----- inspection -----

    def terms(self) -> List[Tuple[Monomial, ParamPoly]]:
        return sorted(self._terms.items(), key=lambda item: (self.variety.weighted_degree(item[0]), item[0]))

    def is_zero(self) -> bool:
        return not self._terms

    def component(self, degree: int) -> "GradedClass":
        deg = self.variety.weighted_degree
        return GradedClass(self.variety, {m: c for m, c in self._terms.items() if deg(m) == degree})

    def truncate(self, degree: int) -> "GradedClass":
        deg = self.variety.weighted_degree
        return GradedClass(self.variety, {m: c for m, c in self._terms.items() if deg(m) <= degree})

    def constant_term(self) -> ParamPoly:
        zero = self.variety.zero_monomial
        return self._terms.get(zero, self.variety.context.zero)

    def degrees(self) -> List[int]:
        return sorted({self.variety.weighted_degree(m) for m in self._terms})

    def is_homogeneous(self, degree: int) -> bool:
        return all(self.variety.weighted_degree(m) == degree for m in self._terms)

    def coefficients(self) -> List[ParamPoly]:
        return [c for _, c in self.terms()]

    def map_coefficients(self, fn: Callable[[ParamPoly], ParamPoly]) -> "GradedClass":
        return GradedClass(self.variety, {m: fn(c) for m, c in self._terms.items()})

    def subs(self, assignment: Mapping[str, RationalLike]) -> "GradedClass":
        return self.map_coefficients(lambda c: c.subs(assignment))

    # ----- series in the graded ring -----

    def inverse(self) -> "GradedClass":
        """Power-series inverse; the degree-0 part must be a nonzero constant."""
        c0 = self.constant_term()
        if not c0.is_constant() or not c0:
            raise ChowRingError(f"Class is not invertible in {self.variety.name}: constant term {c0}")
        unit = self / c0.constant_value()
        x = self.variety.one() - unit
        result = self.variety.one()
        power = self.variety.one()
        for _ in range(self.variety.dimension):
            power = power * x
            if power.is_zero():
                break
            result = result + power
        return result / c0.constant_value()

    def exp(self) -> "GradedClass":
        """exp(x) for a class without degree-0 part."""
        if self.constant_term():
            raise ChowRingError("exp is only defined for classes without constant term")
        result = self.variety.one()
        power = self.variety.one()
        for k in range(1, self.variety.dimension + 1):
            power = power * self / k
            if power.is_zero():
                break
            result = result + power
        return result

    # ----- rendering -----

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for monomial, coeff in sorted(
            self._terms.items(),
            key=lambda item: (-self.variety.weighted_degree(item[0]), item[0]),
        ):
            mono = self.variety.format_monomial(monomial)
            if not mono:
                text = str(coeff)
            elif coeff == 1:
                text = mono
            elif coeff == -1:
                text = f"-{mono}"
            elif coeff.is_constant():
                text = f"{coeff}*{mono}"
            else:
                text = f"({coeff})*{mono}"
            parts.append(text)
        rendered = " + ".join(parts)
        return rendered.replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"GradedClass({self}; {self.variety.name})"


# ---------- Varieties ----------

@dataclass(frozen=True)
class _BundleData:
    base: "Variety"
    zeta_index: int
    rank: int
    segre: Tuple[GradedClass, ...]


class Variety:
    """
    Graded ring presentation plus integration, tangent class and point class.

    Build with :func:`build_variety`, :func:`product_variety` or
    :func:`projective_bundle`; all of them validate the presentation.
    """

    def __init__(
        self,
        name: str,
        context: ParamContext,
        generators: Sequence[GeneratorSpec],
        dimension: int,
        rewrites: Mapping[Monomial, RawClass],
        integration: Mapping[Monomial, ParamPoly],
        blocks: Sequence[Tuple[Tuple[int, ...], int]] = (),
    ):
        names = [g.name for g in generators]
        if len(set(names)) != len(names):
            raise ChowRingError(f"Duplicate generator names in {name}: {names}")
        if dimension < 0:
            raise ChowRingError(f"Negative dimension for {name}")
        self.name = name
        self.context = context
        self.generators: Tuple[GeneratorSpec, ...] = tuple(generators)
        self.dimension = dimension
        self._degrees = tuple(g.degree for g in self.generators)
        self._rewrites: Dict[Monomial, RawClass] = {k: dict(v) for k, v in rewrites.items()}
        self._integration: Dict[Monomial, ParamPoly] = dict(integration)
        all_block = (tuple(range(len(self.generators))), dimension)
        self._blocks: Tuple[Tuple[Tuple[int, ...], int], ...] = tuple(blocks) + (all_block,)
        self._memo: Dict[Monomial, RawClass] = {}
        self._tangent: Optional[GradedClass] = None
        self._tangent_factory: Optional[Callable[["Variety"], GradedClass]] = None
        self._point: Optional[GradedClass] = None
        self._ancestors: Dict[int, Tuple["Variety", Tuple[int, ...]]] = {}
        self._bundle: Optional[_BundleData] = None

    # ----- basic data -----

    @property
    def generator_names(self) -> Tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    @property
    def zero_monomial(self) -> Monomial:
        return tuple(0 for _ in self.generators)

    def weighted_degree(self, m: Monomial) -> int:
        return sum(e * d for e, d in zip(m, self._degrees))

    def format_monomial(self, m: Monomial) -> str:
        factors = []
        for exp, gen in zip(m, self.generators):
            if exp == 1:
                factors.append(gen.name)
            elif exp > 1:
                factors.append(f"{gen.name}**{exp}")
        return "*".join(factors)

    def index(self, name: str) -> int:
        try:
            return self.generator_names.index(name)
        except ValueError as exc:
            raise ChowRingError(f"Unknown generator {name!r} on {self.name}") from exc

    # ----- normal form -----

    def _truncated(self, m: Monomial) -> bool:
        for indices, bound in self._blocks:
            if sum(m[i] * self._degrees[i] for i in indices) > bound:
                return True
        return False

    def _find_rewrite(self, m: Monomial) -> Optional[Monomial]:
        for key in self._rewrites:
            if _divides(key, m):
                return key
        return None

    def _reduce(self, m: Monomial) -> RawClass:
        cached = self._memo.get(m)
        if cached is not None:
            return cached
        if self._truncated(m):
            result: RawClass = {}
        else:
            key = self._find_rewrite(m)
            if key is None:
                result = {m: self.context.one}
            else:
                rest = tuple(a - b for a, b in zip(m, key))
                acc: RawClass = {}
                for mono, coeff in self._rewrites[key].items():
                    for nm, nc in self._reduce(_mono_add(mono, rest)).items():
                        value = acc[nm] + coeff * nc if nm in acc else coeff * nc
                        acc[nm] = value
                result = {k: v for k, v in acc.items() if v}
        self._memo[m] = result
        return result

    def _normalize_raw(self, raw: Mapping[Monomial, ParamPoly]) -> GradedClass:
        acc: RawClass = {}
        for m, coeff in raw.items():
            if len(m) != len(self.generators):
                raise ChowRingError(f"Monomial {m} does not conform to {self.name}")
            coeff = self.context.coerce(coeff)
            for nm, nc in self._reduce(tuple(m)).items():
                acc[nm] = acc[nm] + coeff * nc if nm in acc else coeff * nc
        return GradedClass(self, acc)

    def normal_form(self, raw: Union[str, int, GradedClass, Mapping[Monomial, ParamPoly]]) -> GradedClass:
        """
        Reduces a raw class expression; idempotent on GradedClass inputs.

        Raises:
            ChowRingError: If the expression mentions an unknown generator.
        """
        if isinstance(raw, GradedClass):
            if raw.variety is not self:
                raise ChowRingError(f"Class from {raw.variety.name} used on {self.name}")
            return self._normalize_raw(raw._terms)
        if isinstance(raw, Mapping):
            return self._normalize_raw(raw)
        return self._normalize_raw(_parse_raw(raw, self.generator_names, self.context))

    def parse(self, text: Union[str, int], named: Optional[Mapping[str, GradedClass]] = None) -> GradedClass:
        """Normal form of text that may also reference named classes (e.g. ``c2TX``)."""
        named = dict(named or {})
        if not named:
            return self.normal_form(text)
        clash = set(named) & set(self.generator_names)
        if clash:
            raise ChowRingError(f"Named classes shadow generators: {sorted(clash)}")
        symbol_names = list(self.generator_names) + list(named)
        raw = _parse_raw(text, symbol_names, self.context)
        ngens = len(self.generators)
        named_values = [named[n] for n in named]
        for value in named_values:
            if value.variety is not self:
                raise ChowRingError(f"Named class from {value.variety.name} used on {self.name}")
        total = self.zero()
        for mono, coeff in raw.items():
            term = self._normalize_raw({mono[:ngens]: coeff})
            for exp, value in zip(mono[ngens:], named_values):
                if exp:
                    term = term * (value ** exp)
            total = total + term
        return total

    # ----- constructors for classes -----

    def zero(self) -> GradedClass:
        return GradedClass(self, {})

    def one(self) -> GradedClass:
        return GradedClass(self, {self.zero_monomial: self.context.one})

    def scalar(self, value: Coefficient) -> GradedClass:
        return GradedClass(self, {self.zero_monomial: self.context.coerce(value)})

    def gen(self, name: str) -> GradedClass:
        m = [0] * len(self.generators)
        m[self.index(name)] = 1
        return self._normalize_raw({tuple(m): self.context.one})

    def mul(self, x: GradedClass, y: GradedClass) -> GradedClass:
        """Normal-form product; both operands must live on this variety."""
        if x.variety is not self or y.variety is not self:
            raise ChowRingError(f"Mixed-variety operands in product on {self.name}")
        acc: RawClass = {}
        for m1, c1 in x._terms.items():
            for m2, c2 in y._terms.items():
                coeff = c1 * c2
                for nm, nc in self._reduce(_mono_add(m1, m2)).items():
                    acc[nm] = acc[nm] + coeff * nc if nm in acc else coeff * nc
        return GradedClass(self, acc)

    # ----- integration -----

    def integrate(self, c: GradedClass) -> ParamPoly:
        """Degree-top integral; lower components contribute 0."""
        if c.variety is not self:
            raise ChowRingError(f"Class from {c.variety.name} integrated on {self.name}")
        total = self.context.zero
        for m, coeff in c._terms.items():
            if self.weighted_degree(m) != self.dimension:
                continue
            total = total + coeff * self._integration[m]
        return total

    # ----- tangent and point -----

    @property
    def tangent_chern(self) -> GradedClass:
        if self._tangent is None and self._tangent_factory is not None:
            self._tangent = self._tangent_factory(self)
            self._tangent_factory = None
        if self._tangent is None:
            raise ChowRingError(f"No tangent class recorded for {self.name}")
        return self._tangent

    def attach_tangent(self, total: GradedClass) -> None:
        """Records a tangent class computed after the ring was built (catalog assembly only)."""
        if self._tangent is not None or self._tangent_factory is not None:
            raise ChowRingError(f"Tangent class of {self.name} is already set")
        if total.variety is not self:
            raise ChowRingError(f"Tangent class from {total.variety.name} attached to {self.name}")
        self._tangent = total

    @property
    def point_class(self) -> GradedClass:
        if self._point is None:
            raise ChowRingError(f"No point class recorded for {self.name}")
        return self._point

    # ----- maps between tower stages -----

    def _register_ancestor(self, parent: "Variety", embedding: Tuple[int, ...]) -> None:
        self._ancestors[id(parent)] = (parent, embedding)
        for ancestor, inner in parent._ancestors.values():
            self._ancestors[id(ancestor)] = (ancestor, tuple(embedding[i] for i in inner))

    def pullback(self, c: GradedClass) -> GradedClass:
        """Pulls a class back from a base stage or product factor of this variety."""
        if c.variety is self:
            return c
        entry = self._ancestors.get(id(c.variety))
        if entry is None or entry[0] is not c.variety:
            raise ChowRingError(f"{c.variety.name} is not a stage or factor of {self.name}")
        _, embedding = entry
        raw: RawClass = {}
        for m, coeff in c._terms.items():
            target = [0] * len(self.generators)
            for src, exp in enumerate(m):
                target[embedding[src]] += exp
            raw[tuple(target)] = coeff
        return self._normalize_raw(raw)

    @property
    def base(self) -> "Variety":
        if self._bundle is None:
            raise ChowRingError(f"{self.name} is not a projective bundle")
        return self._bundle.base

    def pushforward(self, c: GradedClass) -> GradedClass:
        """
        Segre pushforward to the base: pi_*(z^k b) = s_(k-r+1)(E) b.

        Raises:
            ChowRingError: If this variety was not built by projective_bundle.
        """
        if self._bundle is None:
            raise ChowRingError(f"{self.name} is not a projective bundle")
        if c.variety is not self:
            raise ChowRingError(f"Class from {c.variety.name} pushed forward from {self.name}")
        data = self._bundle
        base = data.base
        total = base.zero()
        for m, coeff in c._terms.items():
            k = m[data.zeta_index]
            idx = k - data.rank + 1
            if idx < 0 or idx >= len(data.segre):
                continue
            beta = m[:data.zeta_index] + m[data.zeta_index + 1:]
            total = total + base._normalize_raw({beta: coeff}) * data.segre[idx]
        return total

    def top_monomials(self) -> Iterator[Monomial]:
        """All exponent vectors of weighted degree equal to the dimension."""
        n = len(self.generators)

        def walk(i: int, remaining: int, prefix: List[int]) -> Iterator[Monomial]:
            if i == n:
                if remaining == 0:
                    yield tuple(prefix)
                return
            deg = self._degrees[i]
            for exp in range(remaining // deg + 1):
                prefix.append(exp)
                yield from walk(i + 1, remaining - exp * deg, prefix)
                prefix.pop()

        yield from walk(0, self.dimension, [])

    # ----- validation -----

    def _validate(self) -> None:
        for key, value in self._rewrites.items():
            deg = self.weighted_degree(key)
            if deg == 0:
                raise ChowRingError(f"Rewrite of the unit monomial on {self.name}")
            for mono in value:
                if self.weighted_degree(mono) != deg:
                    raise ChowRingError(
                        f"Non-homogeneous rewrite on {self.name}: {self.format_monomial(key)} "
                        f"(degree {deg}) -> term {self.format_monomial(mono) or '1'} "
                        f"(degree {self.weighted_degree(mono)})"
                    )
        for key in self._integration:
            if self.weighted_degree(key) != self.dimension:
                raise ChowRingError(
                    f"Integration entry {self.format_monomial(key) or '1'} on {self.name} is not of top degree"
                )
        for m in self.top_monomials():
            if self._truncated(m) or self._find_rewrite(m) is not None:
                continue
            if m not in self._integration:
                raise ChowRingError(
                    f"Missing top-degree integration entry on {self.name}: {self.format_monomial(m) or '1'}"
                )
        for key, value in list(self._integration.items()):
            if self._truncated(key) or self._find_rewrite(key) is None:
                continue
            reduced = self._reduce(key)
            expected = self.context.zero
            for nm, nc in reduced.items():
                if nm not in self._integration:
                    raise ChowRingError(
                        f"Missing top-degree integration entry on {self.name}: {self.format_monomial(nm)}"
                    )
                expected = expected + nc * self._integration[nm]
            if expected != value:
                raise ChowRingError(
                    f"Integration inconsistent under rewriting on {self.name}: "
                    f"{self.format_monomial(key)} -> {value} but its normal form integrates to {expected}"
                )
        if self._point is not None and self.integrate(self._point) != 1:
            raise ChowRingError(f"Point class of {self.name} does not integrate to 1")

    def __repr__(self) -> str:
        return f"Variety({self.name}, dim={self.dimension}, gens={list(self.generator_names)})"


def alternate_signs(c: GradedClass) -> GradedClass:
    """Multiplies the degree-k component by (-1)^k (total Chern class of the dual)."""
    deg = c.variety.weighted_degree
    return GradedClass(c.variety, {m: (v if deg(m) % 2 == 0 else -v) for m, v in c._terms.items()})


# ---------- Builders ----------

def build_variety(spec: VarietySpec) -> Variety:
    """
    Validates a text presentation and returns an immutable Variety.

    Raises:
        ChowRingError: Non-homogeneous rewrites, missing or inconsistent
            integration entries, or a point class that does not integrate to 1.
    """
    names = [g.name for g in spec.generators]

    def single_monomial(text: str) -> Monomial:
        raw = _parse_raw(text, names, spec.context)
        if len(raw) != 1 or next(iter(raw.values())) != 1:
            raise ChowRingError(f"Expected a bare monomial on {spec.name}, got {text!r}")
        return next(iter(raw))

    rewrites = {single_monomial(k): _parse_raw(v, names, spec.context) for k, v in spec.rewrites.items()}
    integration = {
        single_monomial(k): spec.context.parse(v) for k, v in spec.integration.items()
    }
    blocks = []
    for block_names, bound in spec.blocks:
        blocks.append((tuple(names.index(n) for n in block_names), bound))

    variety = Variety(spec.name, spec.context, spec.generators, spec.dimension, rewrites, integration, blocks)
    if spec.point_class is not None:
        variety._point = variety.normal_form(spec.point_class)
    variety._validate()
    if spec.tangent_chern is not None:
        variety._tangent = variety.normal_form(spec.tangent_chern)
    logger.debug("Built %r", variety)
    return variety


def point_variety(context: ParamContext) -> Variety:
    """The zero-dimensional variety with integral 1 on the unit."""
    return build_variety(VarietySpec(
        name="point", context=context, generators=(), dimension=0,
        integration={"1": "1"}, point_class="1", tangent_chern="1",
    ))


def product_variety(v: Variety, w: Variety, name: Optional[str] = None) -> Variety:
    """
    Product ring; clashing generator names of ``w`` are suffixed with ``_2``.

    Integration multiplies on split monomials and tangent classes multiply.
    """
    if v.context != w.context:
        raise ChowRingError(f"Products need one parameter context: {v.name} vs {w.name}")
    taken = set(v.generator_names)
    w_gens = []
    for gen in w.generators:
        new_name = gen.name
        while new_name in taken:
            new_name = f"{new_name}_2"
        taken.add(new_name)
        w_gens.append(GeneratorSpec(new_name, gen.degree))
    nv = len(v.generators)
    nw = len(w.generators)

    def embed_v(m: Monomial) -> Monomial:
        return tuple(m) + (0,) * nw

    def embed_w(m: Monomial) -> Monomial:
        return (0,) * nv + tuple(m)

    rewrites: Dict[Monomial, RawClass] = {}
    for key, value in v._rewrites.items():
        rewrites[embed_v(key)] = {embed_v(m): c for m, c in value.items()}
    for key, value in w._rewrites.items():
        rewrites[embed_w(key)] = {embed_w(m): c for m, c in value.items()}

    integration = {}
    for m1, c1 in v._integration.items():
        for m2, c2 in w._integration.items():
            integration[_mono_add(embed_v(m1), embed_w(m2))] = c1 * c2

    blocks = [(tuple(indices), bound) for indices, bound in v._blocks]
    blocks += [(tuple(nv + i for i in indices), bound) for indices, bound in w._blocks]

    product = Variety(
        name or f"{v.name}x{w.name}",
        v.context,
        tuple(v.generators) + tuple(w_gens),
        v.dimension + w.dimension,
        rewrites,
        integration,
        blocks,
    )
    product._register_ancestor(v, tuple(range(nv)))
    product._register_ancestor(w, tuple(nv + i for i in range(nw)))
    if v._point is not None and w._point is not None:
        product._point = product.pullback(v._point) * product.pullback(w._point)
    product._validate()

    def tangent(p: Variety) -> GradedClass:
        return p.pullback(v.tangent_chern) * p.pullback(w.tangent_chern)

    product._tangent_factory = tangent
    logger.debug("Built product %r", product)
    return product


def projective_bundle(base: Variety, bundle_sheaf, gen_name: str, name: Optional[str] = None) -> Variety:
    """
    P(E) of rank-one quotients of a concrete-rank sheaf E on ``base``.

    Adds the degree-1 generator ``gen_name`` with the Grothendieck rewrite,
    extends integration by the fiber normalization and multiplies the base
    tangent class by the relative tangent class.

    Raises:
        ChowRingError: If the rank is symbolic or smaller than 2.
    """
    rank = bundle_sheaf.rank
    if not isinstance(rank, int):
        raise ChowRingError(f"Projectivization needs a concrete rank, got {rank}")
    if rank < 2:
        raise ChowRingError(f"Projectivization needs rank >= 2, got {rank}")
    if bundle_sheaf.host is not base:
        raise ChowRingError(f"Sheaf lives on {bundle_sheaf.host.name}, not on {base.name}")

    nb = len(base.generators)
    zeta = nb

    def lift(m: Monomial, zeta_exp: int = 0) -> Monomial:
        return tuple(m) + (zeta_exp,)

    rewrites: Dict[Monomial, RawClass] = {}
    for key, value in base._rewrites.items():
        rewrites[lift(key)] = {lift(m): c for m, c in value.items()}

    grothendieck: RawClass = {}
    for i in range(1, rank + 1):
        sign = 1 if i % 2 == 1 else -1
        for m, coeff in bundle_sheaf.chern(i)._terms.items():
            key = lift(m, rank - i)
            grothendieck[key] = grothendieck[key] + sign * coeff if key in grothendieck else sign * coeff
    rewrites[lift(base.zero_monomial, rank)] = {m: c for m, c in grothendieck.items() if c}

    integration = {lift(m, rank - 1): c for m, c in base._integration.items()}
    blocks = [(tuple(indices), bound) for indices, bound in base._blocks]

    bundle = Variety(
        name or f"P({gen_name})",
        base.context,
        tuple(base.generators) + (GeneratorSpec(gen_name, 1),),
        base.dimension + rank - 1,
        rewrites,
        integration,
        blocks,
    )
    bundle._register_ancestor(base, tuple(range(nb)))

    # s(E) = 1 / c(E^dual) in the quotient convention
    segre_total = alternate_signs(bundle_sheaf.total_chern).inverse()
    segre = tuple(segre_total.component(k) for k in range(base.dimension + 1))
    bundle._bundle = _BundleData(base=base, zeta_index=zeta, rank=rank, segre=segre)

    if base._point is not None:
        bundle._point = bundle.gen(gen_name) ** (rank - 1) * bundle.pullback(base._point)
    bundle._validate()

    def tangent(b: Variety) -> GradedClass:
        # Imported here: sheaf builds on this module.
        from core.sheaf import relative_tangent_of_bundle

        relative = relative_tangent_of_bundle(b, bundle_sheaf, gen_name)
        return b.pullback(base.tangent_chern) * relative.total_chern

    bundle._tangent_factory = tangent
    logger.debug("Built projective bundle %r of rank %d over %s", bundle, rank, base.name)
    return bundle
