import pytest

from core.exact import ParamContext
from core.spaces import (
    CONGRUENCE_PARAMS,
    bitangent_space_t,
    formal_congruence_surface,
    grassmannian_g13,
    hypersurface_sigma,
    projective_space,
    sym_square_curve,
    tangent_space_y,
    tower_ix_ax,
)


CTX = ParamContext(("d",))


@pytest.fixture(scope="module")
def congruence():
    return formal_congruence_surface(ParamContext(CONGRUENCE_PARAMS))


@pytest.fixture(scope="module")
def sigma():
    return hypersurface_sigma(CTX)


class TestProjectiveSpaces:
    def test_point(self):
        point = projective_space(0, CTX)
        assert point.variety.dimension == 0
        assert point.integrate(point.variety.one()) == 1

    def test_negative_dimension(self):
        with pytest.raises(ValueError, match="negative dimension"):
            projective_space(-1, CTX)

    def test_euler_number_of_p3(self):
        p3 = projective_space(3, CTX)
        assert p3.integrate(p3.variety.tangent_chern.component(3)) == 4


class TestGrassmannian:
    def test_schubert_calculus(self):
        g = grassmannian_g13(CTX)
        alpha, beta, q1 = g.cls("alpha"), g.cls("beta"), g.cls("q1")
        assert g.integrate(alpha * alpha) == 1
        assert g.integrate(beta * beta) == 1
        assert g.integrate(alpha * beta) == 0
        assert g.integrate(q1 ** 4) == 2

    def test_euler_number(self):
        g = grassmannian_g13(CTX)
        assert g.integrate(g.variety.tangent_chern.component(4)) == 6

    def test_unknown_names(self):
        g = grassmannian_g13(CTX)
        with pytest.raises(KeyError, match="no class named"):
            g.cls("gamma")
        with pytest.raises(KeyError, match="no sheaf named"):
            g.sheaf("E")


class TestCongruenceSurface:
    def test_intersection_numbers(self, congruence):
        ctx = congruence.variety.context
        H, K = congruence.variety.gen("H"), congruence.variety.gen("K")
        assert congruence.integrate(H * H) == ctx.parse("a + b")
        assert congruence.integrate(H * K) == ctx.parse("2*g - 2 - a - b")
        assert congruence.integrate(congruence.cls("c2TX")) == ctx.parse("12*chi - k2")

    def test_bidegree(self, congruence):
        ctx = congruence.variety.context
        assert congruence.integrate(congruence.cls("c2S")) == ctx.param("a")
        assert congruence.integrate(congruence.cls("c2Q")) == ctx.param("b")

    def test_needs_congruence_parameters(self):
        with pytest.raises(ValueError, match="lacks"):
            formal_congruence_surface(CTX)

    def test_tower_dimensions(self, congruence):
        tower = tower_ix_ax(congruence)
        assert tower["I_X"].variety.dimension == 3
        assert tower["A_X"].variety.dimension == 4
        assert tower["A_X"].sheaf("TJ").rank == 5

    def test_named_classes_parse(self, congruence):
        ax = tower_ix_ax(congruence)["A_X"]
        assert ax.parse("A - 2*h") == ax.parse("H + K")


class TestSurfacesInP3:
    def test_euler_number(self, sigma):
        assert sigma.integrate(sigma.sheaf("T").chern(2)) == CTX.parse("d**3 - 4*d**2 + 6*d")

    def test_canonical_class(self, sigma):
        assert sigma.variety.tangent_chern.component(1) == sigma.parse("(4 - d)*h")

    def test_tangent_space_classes(self, sigma):
        Y = tangent_space_y(sigma)
        assert Y.variety.dimension == 3
        assert Y.sheaf("Q").chern(1) == Y.cls("l")
        assert Y.cls("Y1") == Y.parse("(d + 2)*(d - 3)*l - 4*(d - 3)*h")
        assert Y.cls("KY") + Y.cls("Y2") == Y.parse("(3*d - 8)*h")

    def test_parabolic_and_flex_inputs(self, sigma):
        Y = tangent_space_y(sigma)
        assert Y.cls("Yp") == Y.parse("4*(d - 2)*h")
        assert Y.cls("Y2") == Y.parse("2*l + (d - 4)*h")

    def test_forced_y1_meets_c2(self, sigma):
        Y = tangent_space_y(sigma)
        c2 = Y.sheaf("Q").chern(2)
        assert Y.integrate(Y.cls("Y1") * c2) == CTX.parse("d*(d - 2)*(d - 3)*(d + 3)")

    def test_bitangent_space(self):
        T = bitangent_space_t(grassmannian_g13(CTX))
        assert T.variety.dimension == 6
        assert T.sheaf("R").rank == 4
        order = T.integrate(T.cls("X1") * T.cls("alpha"))
        assert order.subs({"d": 4}) == 12


class TestSymmetricSquare:
    def test_forced_table(self):
        ctx = ParamContext(("d", "p"))
        C2 = sym_square_curve(ctx)
        K = C2.cls("K")
        assert C2.integrate(K * K) == ctx.parse("4*p**2 - 13*p + 9")
        chi = (C2.integrate(K * K) + C2.integrate(C2.variety.tangent_chern.component(2))) / 12
        assert chi == ctx.parse("(p - 1)*(p - 2)/2")

    def test_euler_number_input(self):
        ctx = ParamContext(("d", "p"))
        C2 = sym_square_curve(ctx)
        euler = C2.integrate(C2.variety.tangent_chern.component(2))
        assert euler == ctx.parse("(1 - p)*(3 - 2*p)")
        # C^(2) of a rational curve is P2; of an elliptic curve, a P1-bundle over it
        assert euler.subs({"p": 0}) == 3
        assert euler.subs({"p": 1}) == 0

    def test_printed_table_is_a_separate_ring(self):
        ctx = ParamContext(("d", "p"))
        printed = sym_square_curve(ctx, p_delta="1", canonical="(2 - 2*p)*P + Delta/2", name="C2_printed")
        P, Delta = printed.cls("P"), printed.cls("Delta")
        assert printed.integrate(P * Delta) == 1
        assert printed.name == "C2_printed"

    def test_needs_curve_parameters(self):
        with pytest.raises(ValueError, match="lacks"):
            sym_square_curve(CTX)
