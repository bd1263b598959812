import pytest
import sympy

from core.exact import ParamContext
from core.oracle import (
    OracleError,
    certify_identity,
    fit_sym_closed_forms,
    fitted_class,
    oracle_class,
    rational_text,
    render_value,
    sample_floor_from_env,
    sample_points,
    solve_linear,
    splitting_host,
    splitting_oracle_sym,
)
from core.sheaf import SYM_CLOSED_FORMS, SYM_PRINTED_C4
from core.spaces import projective_space


CTX = ParamContext(("d",))
c1, c2 = sympy.symbols("c1 c2")


def _closed_form(forms, i, j):
    for text, monomial in forms:
        if monomial == (i, j):
            return sympy.sympify(text)
    return sympy.Integer(0)


class TestSplittingOracle:
    def test_sym_one_is_the_bundle(self):
        assert splitting_oracle_sym(1) == {0: 1, 1: c1, 2: c2}

    def test_sym_cube_top_class(self):
        assert sympy.expand(splitting_oracle_sym(3)[4] - (18 * c1 ** 2 * c2 + 9 * c2 ** 2)) == 0

    def test_negative_power(self):
        with pytest.raises(OracleError, match="Negative symmetric power"):
            splitting_oracle_sym(-1)

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_fit_reproduces_closed_forms(self, k):
        fitted = fit_sym_closed_forms(k)
        for (i, j), poly in fitted.items():
            assert sympy.expand(poly - _closed_form(SYM_CLOSED_FORMS[k], i, j)) == 0

    def test_fit_rejects_printed_c4(self):
        fitted = fit_sym_closed_forms(4)
        differs = [
            (i, j) for (i, j), poly in fitted.items()
            if sympy.expand(poly - _closed_form(SYM_PRINTED_C4, i, j)) != 0
        ]
        assert sorted(differs) == [(0, 2), (4, 0)]

    def test_oracle_class_matches_fitted_class(self):
        host = splitting_host(CTX)
        fitted = fitted_class(host, 4)
        for n in (3, 4, 6):
            assert oracle_class(host, n, 4) == fitted.subs({"d": n})


class TestCertificates:
    def test_equal(self):
        cert = certify_identity(CTX.parse("(d - 1)*(d + 1)"), CTX.parse("d**2 - 1"))
        assert cert.is_equal
        assert cert.methods_agree
        assert cert.sample_count == 3
        assert cert.witness is None
        assert cert.to_dict()["verdict"] == "equal"

    def test_unequal_carries_a_witness(self):
        cert = certify_identity(CTX.parse("d**2"), CTX.parse("d**2 - 1"))
        assert not cert.is_equal
        assert cert.methods_agree
        doc = cert.to_dict()
        assert set(doc["witness"]) == {"d"}
        assert doc["witness_lhs"] != doc["witness_rhs"]

    def test_sample_floor_raises_grid_size(self):
        cert = certify_identity(CTX.parse("d"), CTX.parse("d"), sample_floor=7)
        assert cert.sample_count == 7

    def test_degree_bounds_are_widened(self):
        cert = certify_identity(CTX.parse("d"), CTX.parse("d"), degree_bounds={"d": 5})
        assert cert.degree_bounds == {"d": 5}
        assert cert.sample_count == 6

    def test_constants(self):
        cert = certify_identity(CTX.const(1), CTX.const(2))
        assert not cert.is_equal
        assert cert.witness == {}
        assert cert.witness_lhs == "1"

    def test_classes(self):
        p2 = projective_space(2, CTX).variety
        cert = certify_identity(p2.parse("(d + 1)*h"), p2.parse("d*h + h"))
        assert cert.is_equal

    def test_incomparable_operands(self):
        p2 = projective_space(2, CTX).variety
        with pytest.raises(OracleError, match="class with a scalar"):
            certify_identity(p2.gen("h"), CTX.param("d"))
        with pytest.raises(OracleError, match="different parameter contexts"):
            certify_identity(CTX.param("d"), ParamContext(("p",)).param("p"))

    def test_sample_points_are_centred(self):
        assert sample_points(3) == [-1, 0, 1]
        assert sample_points(4) == [-2, -1, 0, 1]


class TestSampleFloorEnv:
    def test_default(self, monkeypatch):
        monkeypatch.delenv("FOCAL_SAMPLES", raising=False)
        assert sample_floor_from_env(default=4) == 4

    def test_override(self, monkeypatch):
        monkeypatch.setenv("FOCAL_SAMPLES", "9")
        assert sample_floor_from_env() == 9

    @pytest.mark.parametrize("raw,message", [("many", "must be an integer"), ("0", "at least 1")])
    def test_invalid(self, monkeypatch, raw, message):
        monkeypatch.setenv("FOCAL_SAMPLES", raw)
        with pytest.raises(ValueError, match=message):
            sample_floor_from_env()


class TestSolveLinear:
    def test_square_system(self):
        solution = solve_linear(["x", "y"], ["x + y - 3", "x - y - 1"], CTX)
        assert solution == {"x": 2, "y": 1}

    def test_identity_in_parameter(self):
        solution = solve_linear(["m", "n"], ["m*d + n - (3*d + 4)"], CTX, identity_in=("d",))
        assert solution == {"m": 3, "n": 4}

    def test_solution_polynomial_in_context(self):
        solution = solve_linear(["n"], ["2*n - d**2 + d"], CTX)
        assert solution["n"] == CTX.parse("(d**2 - d)/2")

    def test_inconsistent(self):
        with pytest.raises(OracleError, match="Inconsistent"):
            solve_linear(["x"], ["x - 1", "x - 2"], CTX)

    def test_underdetermined(self):
        with pytest.raises(OracleError, match="does not determine"):
            solve_linear(["x", "y"], ["x + y"], CTX)

    def test_non_polynomial_solution(self):
        with pytest.raises(OracleError, match="not polynomial"):
            solve_linear(["x"], ["d*x - 1"], CTX)


class TestRendering:
    def test_render_value(self):
        assert render_value(CTX.const(4)) == "4"
        assert render_value(CTX.parse("-21/2")) == "-21/2"
        assert "d" in render_value(CTX.parse("d + 1"))

    def test_rational_text(self):
        assert rational_text("4/2") == "2"
        assert rational_text("3/6") == "1/2"
