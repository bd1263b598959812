"""
Exact coefficient kernel.

Rationals are sympy ``QQ`` elements, which are always stored in lowest terms
with a positive denominator. Parameter polynomials are sparse elements of a
``PolyRing`` over ``QQ`` wrapped in :class:`ParamPoly`, so that every value
remembers the :class:`ParamContext` (ordered parameter names) it belongs to.

Each scenario declares its own context. A polynomial in the curve genus ``p``
of the bisecant section can therefore never be added to one in the sectional
genus ``g`` of the focal section by accident.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Tuple, Union

from sympy import Basic, Symbol, sympify
from sympy.core.sympify import SympifyError
from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement, PolyRing

logger = logging.getLogger(__name__)

# Element type of QQ (PythonMPQ or gmpy2.mpq depending on the install).
Rational = QQ.dtype

RationalLike = Union[int, Fraction, str, "Rational"]
Scalar = Union[int, Fraction, "Rational"]

RAT_OPS = ("add", "sub", "mul", "div")
POLY_OPS = ("add", "sub", "mul")


class ExactArithmeticError(ArithmeticError):
    """Division by zero or a result that is not a polynomial."""


class ParameterContextError(ValueError):
    """Mixed parameter contexts, unknown parameters or missing assignments."""


# ---------- Rationals ----------

def to_rational(value: RationalLike) -> Rational:
    """
    Converts ints, fractions, sympy rationals and ``"num/den"`` strings to QQ.

    Raises:
        ExactArithmeticError: If a string has a zero denominator.
        ValueError: If the value cannot be read as an exact rational.
    """
    if isinstance(value, bool):
        raise ValueError(f"Booleans are not rationals: {value!r}")
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("Empty rational literal")
        num_text, _, den_text = text.partition("/")
        try:
            num = int(num_text)
            den = int(den_text) if den_text else 1
        except ValueError as exc:
            raise ValueError(f"Invalid rational literal: {value!r}") from exc
        if den == 0:
            raise ExactArithmeticError(f"Zero denominator in {value!r}")
        return QQ(num, den)
    if QQ.of_type(value):
        return value
    if isinstance(value, Basic) and value.is_Rational:
        return QQ.from_sympy(value)
    raise ValueError(f"Cannot convert {value!r} to an exact rational")


def rat_arith(x: RationalLike, y: RationalLike, op: str) -> Rational:
    """Exact field arithmetic on two rationals; ``op`` is one of ``RAT_OPS``."""
    left, right = to_rational(x), to_rational(y)
    if op == "add":
        return left + right
    if op == "sub":
        return left - right
    if op == "mul":
        return left * right
    if op == "div":
        if not right:
            raise ExactArithmeticError(f"Division of {format_rational(left)} by zero")
        return left / right
    raise ValueError(f"Unknown rational operation: {op}")


def is_integral(value: Rational) -> bool:
    return int(QQ.denom(value)) == 1


def format_rational(value: Rational) -> str:
    """Canonical ``num/den`` rendering used by every machine format."""
    return f"{int(QQ.numer(value))}/{int(QQ.denom(value))}"


def format_exact(value: Rational) -> str:
    """Integer text when integral, ``num/den`` otherwise."""
    if is_integral(value):
        return str(int(QQ.numer(value)))
    return format_rational(value)


# ---------- Parameter polynomials ----------

@dataclass(frozen=True)
class ParamContext:
    """
    Ordered scalar parameter names shared by every ParamPoly of a scenario.

    Two contexts are the same context exactly when their names agree.
    """
    names: Tuple[str, ...]
    ring: PolyRing = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        names = tuple(self.names)
        if len(set(names)) != len(names):
            raise ParameterContextError(f"Duplicate parameter names in {names}")
        for name in names:
            if not name.isidentifier():
                raise ParameterContextError(f"Invalid parameter name: {name!r}")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "ring", PolyRing(names, QQ))

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError as exc:
            raise ParameterContextError(
                f"Unknown parameter {name!r}; context declares {list(self.names)}"
            ) from exc

    def wrap(self, poly: PolyElement) -> "ParamPoly":
        return ParamPoly(self, poly)

    def const(self, value: RationalLike) -> "ParamPoly":
        return ParamPoly(self, self.ring.ground_new(to_rational(value)))

    def param(self, name: str) -> "ParamPoly":
        return ParamPoly(self, self.ring.gens[self.index(name)])

    @property
    def zero(self) -> "ParamPoly":
        return ParamPoly(self, self.ring.zero)

    @property
    def one(self) -> "ParamPoly":
        return ParamPoly(self, self.ring.one)

    def symbols(self) -> Dict[str, Symbol]:
        return {name: Symbol(name) for name in self.names}

    def from_expr(self, expr: Basic) -> "ParamPoly":
        """Converts a sympy expression in this context's parameters."""
        stray = sorted(str(s) for s in expr.free_symbols if str(s) not in self.names)
        if stray:
            raise ParameterContextError(
                f"Unknown parameters {stray}; context declares {list(self.names)}"
            )
        try:
            return ParamPoly(self, self.ring.from_expr(expr))
        except ValueError as exc:
            raise ExactArithmeticError(f"Not a polynomial in {list(self.names)}: {expr}") from exc

    def parse(self, text: Union[str, int]) -> "ParamPoly":
        """
        Parses polynomial text such as ``"2*a + 2*g - 2"`` or ``"1/5760"``.

        Raises:
            ParameterContextError: If the text uses undeclared names.
            ExactArithmeticError: If the text is not a polynomial.
        """
        if isinstance(text, int):
            return self.const(text)
        try:
            expr = sympify(str(text), locals=self.symbols())
        except (SympifyError, SyntaxError, TypeError) as exc:
            raise ValueError(f"Cannot parse polynomial text {text!r}") from exc
        return self.from_expr(expr)

    def coerce(self, value: Union["ParamPoly", Scalar]) -> "ParamPoly":
        if isinstance(value, ParamPoly):
            if value.context != self:
                raise ParameterContextError(
                    f"Parameter context mismatch: {list(value.context.names)} vs {list(self.names)}"
                )
            return value
        return self.const(value)


class ParamPoly:
    """
    Exact polynomial over QQ in the parameters of one ParamContext.

    Values are treated as immutable; every operation returns a new instance.
    """

    __slots__ = ("context", "_poly")

    def __init__(self, context: ParamContext, poly: PolyElement):
        if poly.ring != context.ring:
            raise ParameterContextError("Polynomial ring does not belong to the given context")
        self.context = context
        self._poly = poly

    # ----- arithmetic -----

    def _other(self, other) -> PolyElement:
        if isinstance(other, ParamPoly):
            if other.context != self.context:
                raise ParameterContextError(
                    f"Parameter context mismatch: {list(self.context.names)} vs {list(other.context.names)}"
                )
            return other._poly
        return self.context.ring.ground_new(to_rational(other))

    def __add__(self, other) -> "ParamPoly":
        return ParamPoly(self.context, self._poly + self._other(other))

    __radd__ = __add__

    def __sub__(self, other) -> "ParamPoly":
        return ParamPoly(self.context, self._poly - self._other(other))

    def __rsub__(self, other) -> "ParamPoly":
        return ParamPoly(self.context, self._other(other) - self._poly)

    def __neg__(self) -> "ParamPoly":
        return ParamPoly(self.context, -self._poly)

    def __mul__(self, other) -> "ParamPoly":
        return ParamPoly(self.context, self._poly * self._other(other))

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> "ParamPoly":
        if isinstance(other, ParamPoly):
            if not other.is_constant():
                raise ExactArithmeticError("Division by a non-constant polynomial")
            divisor = other.constant_value()
        else:
            divisor = to_rational(other)
        if not divisor:
            raise ExactArithmeticError("Division of a polynomial by zero")
        return ParamPoly(self.context, self._poly * (QQ.one / divisor))

    def __pow__(self, exponent: int) -> "ParamPoly":
        if not isinstance(exponent, int) or exponent < 0:
            raise ExactArithmeticError(f"Only non-negative integer powers are exact: {exponent!r}")
        return ParamPoly(self.context, self._poly ** exponent)

    # ----- comparison -----

    def __eq__(self, other) -> bool:
        if isinstance(other, ParamPoly):
            return self.context == other.context and self._poly == other._poly
        try:
            return self._poly == self.context.ring.ground_new(to_rational(other))
        except ValueError:
            return NotImplemented

    def __hash__(self) -> int:
        return hash((self.context.names, frozenset(self._poly.items())))

    def __bool__(self) -> bool:
        return not self.is_zero()

    # ----- inspection -----

    def is_zero(self) -> bool:
        return not self._poly

    def is_constant(self) -> bool:
        return all(not any(monom) for monom in self._poly.keys())

    def constant_value(self) -> Rational:
        if not self.is_constant():
            raise ParameterContextError(f"Polynomial {self} still depends on {self.free_parameters()}")
        return self._poly.get(self.context.ring.zero_monom, QQ.zero)

    def terms(self) -> List[Tuple[Tuple[int, ...], Rational]]:
        return sorted(self._poly.items())

    def free_parameters(self) -> Tuple[str, ...]:
        used = set()
        for monom in self._poly.keys():
            used.update(i for i, exp in enumerate(monom) if exp)
        return tuple(self.context.names[i] for i in sorted(used))

    def degree_in(self, name: str) -> int:
        idx = self.context.index(name)
        return max((monom[idx] for monom in self._poly.keys()), default=0)

    def degrees(self) -> Dict[str, int]:
        return {name: self.degree_in(name) for name in self.context.names}

    # ----- substitution -----

    def evaluate(self, assignment: Mapping[str, RationalLike]) -> Rational:
        """
        Exact value under an assignment covering every parameter that occurs.

        Raises:
            ParameterContextError: If an occurring parameter is unassigned.
        """
        missing = [name for name in self.free_parameters() if name not in assignment]
        if missing:
            raise ParameterContextError(f"Unassigned parameters: {missing}")
        values = [
            to_rational(assignment[name]) if name in assignment else QQ.zero
            for name in self.context.names
        ]
        total = QQ.zero
        for monom, coeff in self._poly.iterterms():
            term = coeff
            for idx, exp in enumerate(monom):
                if exp:
                    term *= values[idx] ** exp
            total += term
        return total

    def subs(self, assignment: Mapping[str, RationalLike]) -> "ParamPoly":
        """Partial substitution; unbound parameters stay symbolic."""
        bound = {self.context.index(name): to_rational(value) for name, value in assignment.items()}
        if not bound:
            return self
        acc: Dict[Tuple[int, ...], Rational] = {}
        for monom, coeff in self._poly.iterterms():
            factor = coeff
            reduced = list(monom)
            for idx, value in bound.items():
                if monom[idx]:
                    factor *= value ** monom[idx]
                    reduced[idx] = 0
            key = tuple(reduced)
            acc[key] = acc.get(key, QQ.zero) + factor
        return ParamPoly(self.context, self.context.ring.from_dict(acc))

    def compose(self, mapping: Mapping[str, "ParamPoly"]) -> "ParamPoly":
        """Substitutes polynomials for parameters, e.g. ``d -> d - 4``."""
        ring = self.context.ring
        images = list(ring.gens)
        for name, image in mapping.items():
            images[self.context.index(name)] = self.context.coerce(image)._poly
        result = ring.zero
        for monom, coeff in self._poly.iterterms():
            term = ring.ground_new(coeff)
            for idx, exp in enumerate(monom):
                if exp:
                    term *= images[idx] ** exp
            result += term
        return ParamPoly(self.context, result)

    def coefficients_in(self, name: str) -> List["ParamPoly"]:
        """Coefficients of successive powers of ``name`` (index = exponent)."""
        idx = self.context.index(name)
        buckets: Dict[int, Dict[Tuple[int, ...], Rational]] = {}
        for monom, coeff in self._poly.iterterms():
            reduced = monom[:idx] + (0,) + monom[idx + 1:]
            buckets.setdefault(monom[idx], {})[reduced] = coeff
        top = max(buckets, default=0)
        ring = self.context.ring
        return [ParamPoly(self.context, ring.from_dict(buckets.get(k, {}))) for k in range(top + 1)]

    # ----- rendering -----

    def as_expr(self) -> Basic:
        return self._poly.as_expr()

    def __str__(self) -> str:
        return str(self._poly)

    def __repr__(self) -> str:
        return f"ParamPoly({self}; {','.join(self.context.names)})"


# ---------- Operation-level API ----------

def poly_arith(f: ParamPoly, g: ParamPoly, op: str) -> ParamPoly:
    """Exact ring arithmetic; mismatched contexts raise ParameterContextError."""
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"Unknown polynomial operation: {op}")


def poly_eval(f: ParamPoly, assignment: Mapping[str, RationalLike]) -> Rational:
    """
    Exact value of f at a point; a ring map QQ[params] -> QQ.

    Raises:
        ParameterContextError: If a parameter occurring in f is unassigned.
    """
    return f.evaluate(assignment)


def poly_is_zero(f: ParamPoly) -> bool:
    """Identity between formulas is zero-ness of the canonical difference."""
    return f.is_zero()


def poly_sum(context: ParamContext, values: Iterable[ParamPoly]) -> ParamPoly:
    total = context.zero
    for value in values:
        total = total + value
    return total
