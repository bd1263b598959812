"""
Independent checks used before and during a verification run.

* splitting_oracle_sym: Chern classes of Sym^n of a rank-2 bundle straight
  from the Chern roots {i a + (n - i) b}, rewritten through sympy's
  ``symmetrize`` into c1 = a + b and c2 = a b.
* fit_sym_closed_forms: regenerates the degree-k closed forms in d by
  interpolating oracle values at n = 0..8, then checks them at n = 9, 10.
* certify_identity: canonical-form subtraction, cross-checked by exact
  evaluation on an integer grid with (degree + 1) points per parameter.
* solve_linear: exact linear elimination used to back-solve forced values.
"""
from __future__ import annotations

import itertools
import logging
import os
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import sympy
from sympy import Poly, Symbol, interpolate, linsolve, symmetrize

from core.chow import GeneratorSpec, GradedClass, Variety, VarietySpec, build_variety
from core.exact import ParamContext, ParamPoly, format_exact, poly_eval, to_rational

logger = logging.getLogger(__name__)

METHOD_CANONICAL = "canonical_form"
METHOD_SAMPLING = "sampling"
VERDICT_EQUAL = "equal"
VERDICT_UNEQUAL = "unequal"

DEFAULT_SAMPLE_FLOOR = 3
FIT_NODES = tuple(range(0, 9))
FIT_CHECKS = (9, 10)

Value = Union[ParamPoly, GradedClass]


class OracleError(ValueError):
    """Inconsistent or underdetermined linear systems, incomparable operands."""


# ---------- Splitting principle ----------

_ALPHA, _BETA, _X = sympy.symbols("alpha beta x")
_C1, _C2 = sympy.symbols("c1 c2")


def splitting_oracle_sym(n: int) -> Dict[int, sympy.Expr]:
    """
    c_k(Sym^n E) for a rank-2 E as sympy polynomials in c1, c2 (k = 0..n+1).

    Raises:
        OracleError: If n is negative.
    """
    if n < 0:
        raise OracleError(f"Negative symmetric power {n}")
    product = sympy.Integer(1)
    for i in range(n + 1):
        product *= 1 + (i * _ALPHA + (n - i) * _BETA) * _X
    poly = Poly(sympy.expand(product), _X)
    out: Dict[int, sympy.Expr] = {}
    for k in range(n + 2):
        ek = poly.coeff_monomial(_X ** k)
        if ek == 0:
            out[k] = sympy.Integer(0)
            continue
        symmetric, remainder, defs = symmetrize(ek, _ALPHA, _BETA, formal=True)
        if remainder != 0:
            raise OracleError(f"Elementary symmetric function e_{k} of Sym^{n} is not symmetric")
        names = {s: (_C1 if i == 0 else _C2) for i, (s, _) in enumerate(defs)}
        out[k] = sympy.expand(symmetric.subs(names))
    return out


def splitting_host(context: ParamContext, dimension: int = 4) -> Variety:
    """
    Free graded ring on c1 (degree 1) and c2 (degree 2) truncated above ``dimension``.

    Integration reads off the coefficient of the top power of c2 (or c1 c2^k
    in odd dimension); it exists only so the ring validates.
    """
    gens = (GeneratorSpec("c1", 1), GeneratorSpec("c2", 2))
    integration = {}
    for i in range(dimension + 1):
        if (dimension - i) % 2:
            continue
        j = (dimension - i) // 2
        monomial = "*".join(filter(None, [f"c1**{i}" if i else "", f"c2**{j}" if j else ""])) or "1"
        integration[monomial] = "1" if i == dimension % 2 else "0"
    return build_variety(VarietySpec(
        name="split", context=context, generators=gens, dimension=dimension,
        integration=integration,
    ))


def oracle_class(host: Variety, n: int, k: int) -> GradedClass:
    """The oracle's c_k(Sym^n) as a class on a splitting host."""
    return host.normal_form(str(splitting_oracle_sym(n).get(k, 0)))


def _monomial_coefficient(expr: sympy.Expr, i: int, j: int) -> sympy.Rational:
    return Poly(expr, _C1, _C2).coeff_monomial(_C1 ** i * _C2 ** j) if expr != 0 else sympy.Integer(0)


def fit_sym_closed_forms(k: int, dparam: str = "d") -> Dict[Tuple[int, int], sympy.Expr]:
    """
    Interpolates the coefficient of c1^i c2^j in c_k(Sym^d) as a polynomial in d.

    Nodes are n = 0..8; the fit is then checked against the oracle at n = 9, 10.

    Raises:
        OracleError: If a check node disagrees with the fitted polynomial.
    """
    d = Symbol(dparam)
    values = {n: splitting_oracle_sym(n).get(k, sympy.Integer(0)) for n in FIT_NODES + FIT_CHECKS}
    monomials = [(k - 2 * j, j) for j in range(k // 2 + 1)]
    fitted: Dict[Tuple[int, int], sympy.Expr] = {}
    for i, j in monomials:
        points = [(n, _monomial_coefficient(values[n], i, j)) for n in FIT_NODES]
        poly = sympy.expand(interpolate(points, d))
        for n in FIT_CHECKS:
            expected = _monomial_coefficient(values[n], i, j)
            if poly.subs(d, n) != expected:
                raise OracleError(
                    f"Fitted coefficient of c1^{i} c2^{j} in c_{k} fails at n={n}: "
                    f"{poly.subs(d, n)} != {expected}"
                )
        fitted[(i, j)] = poly
    logger.debug("Fitted c_%d(Sym^d) closed form from %d nodes", k, len(FIT_NODES))
    return fitted


def fitted_class(host: Variety, k: int, dparam: str = "d") -> GradedClass:
    """The interpolated c_k(Sym^d) as a class on a splitting host with d in its context."""
    c1, c2 = host.gen("c1"), host.gen("c2")
    total = host.zero()
    for (i, j), coeff in fit_sym_closed_forms(k, dparam).items():
        total = total + (c1 ** i) * (c2 ** j) * host.context.from_expr(coeff)
    return total


# ---------- Identity certificates ----------

@dataclass
class IdentityCertificate:
    verdict: str                                   # equal | unequal
    method: str = METHOD_CANONICAL                 # primary method
    cross_check: str = METHOD_SAMPLING
    sample_count: int = 0
    degree_bounds: Dict[str, int] = field(default_factory=dict)
    points_per_parameter: Dict[str, int] = field(default_factory=dict)
    sampling_verdict: str = ""
    witness: Optional[Dict[str, str]] = None
    witness_lhs: Optional[str] = None
    witness_rhs: Optional[str] = None

    @property
    def is_equal(self) -> bool:
        return self.verdict == VERDICT_EQUAL

    @property
    def methods_agree(self) -> bool:
        return self.verdict == self.sampling_verdict

    def to_dict(self) -> Dict[str, object]:
        doc: Dict[str, object] = {
            "verdict": self.verdict,
            "method": self.method,
            "cross_check": self.cross_check,
            "sample_count": self.sample_count,
            "degree_bounds": dict(self.degree_bounds),
        }
        if self.witness is not None:
            doc["witness"] = dict(self.witness)
            doc["witness_lhs"] = self.witness_lhs
            doc["witness_rhs"] = self.witness_rhs
        return doc


def _context_of(value: Value) -> ParamContext:
    return value.variety.context if isinstance(value, GradedClass) else value.context


def _coefficients(value: Value) -> List[ParamPoly]:
    return value.coefficients() if isinstance(value, GradedClass) else [value]


def _specialize(value: Value, point: Mapping[str, int]) -> Value:
    if isinstance(value, GradedClass):
        return value.subs(point)
    return value.context.const(poly_eval(value, point))


def _check_comparable(lhs: Value, rhs: Value) -> None:
    if isinstance(lhs, GradedClass) != isinstance(rhs, GradedClass):
        raise OracleError("Cannot compare a class with a scalar polynomial")
    if isinstance(lhs, GradedClass):
        if lhs.variety is not rhs.variety:
            raise OracleError(f"Classes live on {lhs.variety.name} and {rhs.variety.name}")
    elif lhs.context != rhs.context:
        raise OracleError("Polynomials live in different parameter contexts")


def sample_points(count: int) -> List[int]:
    """``count`` distinct integers centred on 0."""
    return [i - count // 2 for i in range(count)]


def sample_floor_from_env(default: int = DEFAULT_SAMPLE_FLOOR) -> int:
    """
    FOCAL_SAMPLES overrides the per-parameter sampling floor.

    Raises:
        ValueError: If the variable is not a positive integer.
    """
    raw = os.environ.get("FOCAL_SAMPLES")
    if raw is None or not raw.strip():
        return default
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"FOCAL_SAMPLES must be an integer, got {raw!r}") from exc
    if value < 1:
        raise ValueError(f"FOCAL_SAMPLES must be at least 1, got {value}")
    return value


def certify_identity(
    lhs: Value,
    rhs: Value,
    degree_bounds: Optional[Mapping[str, int]] = None,
    sample_floor: int = DEFAULT_SAMPLE_FLOOR,
) -> IdentityCertificate:
    """
    Decides lhs == rhs exactly and cross-checks on a sampling grid.

    The grid covers only parameters that occur in either side, with
    max(degree + 1, sample_floor) centred integer points each.
    """
    _check_comparable(lhs, rhs)
    context = _context_of(lhs)
    difference = lhs - rhs
    verdict = VERDICT_EQUAL if difference.is_zero() else VERDICT_UNEQUAL

    bounds: Dict[str, int] = {}
    for poly in _coefficients(lhs) + _coefficients(rhs):
        for name in poly.free_parameters():
            bounds[name] = max(bounds.get(name, 0), poly.degree_in(name))
    if degree_bounds:
        for name, bound in degree_bounds.items():
            if name in bounds:
                bounds[name] = max(bounds[name], bound)
    names = [name for name in context.names if name in bounds]
    per_param = {name: max(bounds[name] + 1, sample_floor) for name in names}

    certificate = IdentityCertificate(
        verdict=verdict,
        degree_bounds=bounds,
        points_per_parameter=per_param,
        sampling_verdict=VERDICT_EQUAL,
    )
    grids = [sample_points(per_param[name]) for name in names]
    count = 0
    for values in itertools.product(*grids):
        point = dict(zip(names, values))
        count += 1
        left, right = _specialize(lhs, point), _specialize(rhs, point)
        if left != right:
            certificate.sampling_verdict = VERDICT_UNEQUAL
            certificate.witness = {name: str(value) for name, value in point.items()}
            certificate.witness_lhs = render_value(left)
            certificate.witness_rhs = render_value(right)
            break
    certificate.sample_count = count

    if verdict == VERDICT_UNEQUAL and certificate.witness is None:
        # only reachable when neither side depends on a parameter
        certificate.witness = {}
        certificate.witness_lhs = render_value(lhs)
        certificate.witness_rhs = render_value(rhs)
        certificate.sampling_verdict = VERDICT_UNEQUAL
    if not certificate.methods_agree:
        logger.error("Canonical form and sampling disagree on %s = %s", lhs, rhs)
    logger.debug("Certified %s with %d samples", verdict, count)
    return certificate


def render_value(value: Value) -> str:
    """Exact text: integers when integral, num/den for rationals, polynomial text otherwise."""
    if isinstance(value, ParamPoly) and value.is_constant():
        return format_exact(value.constant_value())
    return str(value)


# ---------- Linear elimination ----------

def solve_linear(
    unknowns: Sequence[str],
    equations: Sequence[Union[ParamPoly, sympy.Expr, str]],
    target: ParamContext,
    identity_in: Sequence[str] = (),
) -> Dict[str, ParamPoly]:
    """
    Solves equations linear in ``unknowns`` exactly.

    Each equation is read as "= 0". When ``identity_in`` names parameters,
    every equation must hold identically in them, so it is split into one
    equation per coefficient. Solutions are returned in ``target``.

    Raises:
        OracleError: If the system is inconsistent, underdetermined or the
            solution is not polynomial in the target parameters.
    """
    symbols = [Symbol(name) for name in unknowns]
    split_on = [Symbol(name) for name in identity_in]
    system: List[sympy.Expr] = []
    for equation in equations:
        if isinstance(equation, ParamPoly):
            expr = equation.as_expr()
        elif isinstance(equation, str):
            expr = sympy.sympify(equation)
        else:
            expr = equation
        expr = sympy.expand(expr)
        if split_on and expr.free_symbols & set(split_on):
            system.extend(Poly(expr, *split_on).coeffs())
        else:
            system.append(expr)
    solutions = linsolve(system, symbols)
    if solutions == sympy.S.EmptySet:
        raise OracleError(f"Inconsistent linear system in {list(unknowns)}")
    (solution,) = tuple(solutions)
    out: Dict[str, ParamPoly] = {}
    for name, value in zip(unknowns, solution):
        if value.free_symbols & set(symbols):
            raise OracleError(f"Linear system does not determine {name}: {value}")
        try:
            out[name] = target.from_expr(sympy.cancel(value))
        except (ValueError, ArithmeticError) as exc:
            raise OracleError(f"Solution for {name} is not polynomial: {value}") from exc
    logger.debug("Solved %s", {k: str(v) for k, v in out.items()})
    return out


def rational_text(value) -> str:
    return format_exact(to_rational(value))
