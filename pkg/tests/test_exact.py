import random
from fractions import Fraction

import pytest
from sympy import Rational as SympyRational

from core.exact import (
    ExactArithmeticError,
    ParamContext,
    ParameterContextError,
    format_exact,
    format_rational,
    is_integral,
    poly_arith,
    poly_eval,
    poly_is_zero,
    poly_sum,
    rat_arith,
    to_rational,
)


class TestRationals:
    def test_conversions_agree(self):
        half = to_rational("1/2")
        assert to_rational(Fraction(1, 2)) == half
        assert to_rational(SympyRational(1, 2)) == half
        assert to_rational(" 2/4 ") == half
        assert to_rational(3) == to_rational("3")

    def test_lowest_terms_positive_denominator(self):
        assert format_rational(to_rational("6/-4")) == "-3/2"
        assert format_rational(to_rational(4)) == "4/1"

    def test_format_exact(self):
        assert format_exact(to_rational("8/2")) == "4"
        assert format_exact(to_rational("-21/2")) == "-21/2"

    def test_is_integral(self):
        assert is_integral(to_rational("10/5"))
        assert not is_integral(to_rational("1/5760"))

    def test_zero_denominator_rejected(self):
        with pytest.raises(ExactArithmeticError, match="Zero denominator"):
            to_rational("1/0")

    def test_garbage_rejected(self):
        with pytest.raises(ValueError, match="Invalid rational literal"):
            to_rational("one half")
        with pytest.raises(ValueError, match="Empty rational literal"):
            to_rational("  ")
        with pytest.raises(ValueError, match="Booleans"):
            to_rational(True)

    def test_rat_arith(self):
        assert rat_arith("1/2", "1/3", "add") == to_rational("5/6")
        assert rat_arith("1/2", "1/3", "sub") == to_rational("1/6")
        assert rat_arith(2, "3/4", "mul") == to_rational("3/2")
        assert rat_arith(1, 4, "div") == to_rational("1/4")

    def test_division_by_zero(self):
        with pytest.raises(ExactArithmeticError, match="by zero"):
            rat_arith(1, 0, "div")

    def test_unknown_operation(self):
        with pytest.raises(ValueError, match="Unknown rational operation"):
            rat_arith(1, 2, "pow")


class TestParamContext:
    def test_duplicate_names_rejected(self):
        with pytest.raises(ParameterContextError, match="Duplicate"):
            ParamContext(("d", "d"))

    def test_invalid_name_rejected(self):
        with pytest.raises(ParameterContextError, match="Invalid parameter name"):
            ParamContext(("2d",))

    def test_contexts_compare_by_names(self):
        assert ParamContext(("a", "b")) == ParamContext(("a", "b"))
        assert ParamContext(("a", "b")) != ParamContext(("b", "a"))

    def test_unknown_parameter_in_text(self):
        ctx = ParamContext(("d",))
        with pytest.raises(ParameterContextError, match="Unknown parameters"):
            ctx.parse("d + p")

    def test_non_polynomial_text(self):
        ctx = ParamContext(("d",))
        with pytest.raises(ExactArithmeticError, match="Not a polynomial"):
            ctx.parse("1/d")

    def test_parse_constant(self):
        ctx = ParamContext(("d",))
        assert ctx.parse("1/5760").constant_value() == to_rational("1/5760")
        assert ctx.parse(7) == 7


class TestParamPoly:
    ctx = ParamContext(("d",))

    def test_canonical_form_decides_identity(self):
        d = self.ctx.param("d")
        expanded = self.ctx.parse("6*d**2 - 21*d + 16")
        assert (6 * d ** 2 - 21 * d + 16) == expanded
        assert poly_is_zero(expanded - (6 * d * d - 21 * d + 16))

    def test_evaluate_exact(self):
        f = self.ctx.parse("2*d*(6*d**2 - 21*d + 16)")
        assert f.evaluate({"d": 4}) == 224
        assert f.evaluate({"d": "1/2"}) == 7
        assert f.evaluate({"d": Fraction(1, 2)}) == 7

    def test_evaluate_requires_every_occurring_parameter(self):
        ctx = ParamContext(("a", "b"))
        f = ctx.parse("a + 1")
        assert f.evaluate({"a": 2}) == 3
        with pytest.raises(ParameterContextError, match="Unassigned"):
            f.evaluate({"b": 2})

    def test_partial_substitution(self):
        ctx = ParamContext(("a", "b", "g"))
        f = ctx.parse("a*b + g")
        g = f.subs({"a": 2})
        assert g == ctx.parse("2*b + g")
        assert g.free_parameters() == ("b", "g")

    def test_compose_shifts_parameter(self):
        d = self.ctx.param("d")
        shifted = (d * d).compose({"d": d - 4})
        assert shifted == self.ctx.parse("d**2 - 8*d + 16")

    def test_coefficients_in(self):
        coeffs = self.ctx.parse("3*d**2 - 1").coefficients_in("d")
        assert coeffs == [self.ctx.const(-1), self.ctx.zero, self.ctx.const(3)]

    def test_division_by_scalar(self):
        f = self.ctx.parse("2*d + 4") / 2
        assert f == self.ctx.parse("d + 2")
        with pytest.raises(ExactArithmeticError, match="by zero"):
            f / 0

    def test_division_by_polynomial_rejected(self):
        with pytest.raises(ExactArithmeticError, match="non-constant"):
            self.ctx.one / self.ctx.param("d")

    def test_negative_power_rejected(self):
        with pytest.raises(ExactArithmeticError, match="non-negative"):
            self.ctx.param("d") ** -1

    def test_mixed_contexts_rejected(self):
        other = ParamContext(("p",))
        with pytest.raises(ParameterContextError, match="context mismatch"):
            poly_arith(self.ctx.param("d"), other.param("p"), "add")

    def test_constant_value_of_non_constant(self):
        with pytest.raises(ParameterContextError, match="still depends"):
            self.ctx.param("d").constant_value()

    def test_poly_sum(self):
        d = self.ctx.param("d")
        assert poly_sum(self.ctx, [d, d, 1]) == 2 * d + 1
        assert poly_sum(self.ctx, []) == 0


class TestEvaluationIsARingMap:
    CTX = ParamContext(("a", "b"))

    def _random_poly(self, rng):
        terms = [
            f"({rng.randint(-5, 5)}/{rng.randint(1, 4)})*a**{rng.randint(0, 3)}*b**{rng.randint(0, 2)}"
            for _ in range(rng.randint(1, 4))
        ]
        return self.CTX.parse(" + ".join(terms))

    def test_sum_and_product(self):
        rng = random.Random(20260218)
        for _ in range(25):
            f, g = self._random_poly(rng), self._random_poly(rng)
            point = {"a": Fraction(rng.randint(-6, 6), rng.randint(1, 3)), "b": rng.randint(-6, 6)}
            fv, gv = poly_eval(f, point), poly_eval(g, point)
            assert poly_eval(f + g, point) == fv + gv
            assert poly_eval(f * g, point) == fv * gv
            assert poly_eval(f, point) == f.evaluate(point)
            assert (f - f).is_zero()

    def test_ring_axioms_on_triples(self):
        rng = random.Random(1570)
        for _ in range(15):
            f, g, h = (self._random_poly(rng) for _ in range(3))
            assert f * g == g * f
            assert (f + g) + h == f + (g + h)
            assert (f * g) * h == f * (g * h)
            assert f * (g + h) == f * g + f * h

    def test_zero_iff_vanishing_on_grid(self):
        rng = random.Random(5760)
        # degree <= 3 in a and <= 2 in b, so 4 x 3 points decide
        grid = [{"a": x, "b": y} for x in range(-2, 2) for y in range(-1, 2)]
        for _ in range(20):
            f = self._random_poly(rng)
            g = f if rng.random() < 0.5 else f + self._random_poly(rng)
            diff = f - g
            vanishes = all(poly_eval(diff, point) == 0 for point in grid)
            assert poly_is_zero(diff) == vanishes

    def test_unassigned_parameter(self):
        with pytest.raises(ParameterContextError, match="Unassigned parameters"):
            poly_eval(self.CTX.parse("a*b + 1"), {"a": 2})

    def test_absent_parameters_need_no_value(self):
        assert poly_eval(self.CTX.parse("a + 1"), {"a": 2}) == 3
