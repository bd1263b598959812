import random

import pytest

from core.chow import (
    ChowRingError,
    GeneratorSpec,
    VarietySpec,
    build_variety,
    point_variety,
    product_variety,
    projective_bundle,
)
from core.exact import ParamContext
from core.sheaf import from_chern, trivial
from core.spaces import (
    CONGRUENCE_PARAMS,
    formal_congruence_surface,
    grassmannian_g13,
    projective_space,
    tower_ix_ax,
)


CTX = ParamContext(("d",))


def _p(n, gen="h"):
    return projective_space(n, CTX, gen=gen).variety


class TestPresentation:
    def test_projective_plane(self):
        p2 = _p(2)
        h = p2.gen("h")
        assert (h ** 3).is_zero()
        assert p2.integrate(h ** 2) == 1
        assert p2.integrate(p2.tangent_chern) == 3

    def test_parse_matches_arithmetic(self):
        p2 = _p(2)
        h = p2.gen("h")
        assert p2.parse("(1 + h)**3") == p2.one() + h * 3 + h ** 2 * 3
        assert p2.normal_form("d*h**2") == h ** 2 * CTX.param("d")

    def test_normal_form_is_idempotent(self):
        p2 = _p(2)
        cls = p2.parse("(1 + 2*h)**4")
        assert p2.normal_form(cls) == cls

    def test_grassmannian_degree_and_euler_number(self):
        g = grassmannian_g13(CTX)
        q1 = g.cls("q1")
        assert g.integrate(q1 ** 4) == 2
        assert g.integrate(g.variety.tangent_chern) == 6

    def test_alpha_and_beta_planes_meet_once_in_each_family(self):
        g = grassmannian_g13(CTX)
        alpha, beta = g.cls("alpha"), g.cls("beta")
        assert g.integrate(alpha * alpha) == 1
        assert g.integrate(beta * beta) == 1
        assert g.integrate(alpha * beta) == 0

    def test_point_variety(self):
        pt = point_variety(CTX)
        assert pt.integrate(pt.one()) == 1
        assert pt.dimension == 0

    def test_lower_components_integrate_to_zero(self):
        p2 = _p(2)
        assert p2.integrate(p2.gen("h")) == 0


class TestValidation:
    def test_non_homogeneous_rewrite(self):
        with pytest.raises(ChowRingError, match="Non-homogeneous rewrite"):
            build_variety(VarietySpec(
                name="bad", context=CTX, generators=(GeneratorSpec("x", 1), GeneratorSpec("y", 2)),
                dimension=2, rewrites={"x**2": "x"}, integration={"y": "1"},
            ))

    def test_missing_integration_entry(self):
        with pytest.raises(ChowRingError, match="Missing top-degree integration entry"):
            build_variety(VarietySpec(
                name="bad", context=CTX, generators=(GeneratorSpec("x", 1), GeneratorSpec("y", 1)),
                dimension=2, integration={"x**2": "1"},
            ))

    def test_inconsistent_integration(self):
        with pytest.raises(ChowRingError, match="inconsistent under rewriting"):
            build_variety(VarietySpec(
                name="bad", context=CTX, generators=(GeneratorSpec("x", 1), GeneratorSpec("pt", 2)),
                dimension=2, rewrites={"x**2": "2*pt"}, integration={"pt": "1", "x**2": "3"},
            ))

    def test_point_class_must_integrate_to_one(self):
        with pytest.raises(ChowRingError, match="does not integrate to 1"):
            build_variety(VarietySpec(
                name="bad", context=CTX, generators=(GeneratorSpec("x", 1),),
                dimension=1, rewrites={"x**2": "0"}, integration={"x": "1"}, point_class="2*x",
            ))

    def test_bad_generator_specs(self):
        with pytest.raises(ChowRingError, match="Invalid generator name"):
            GeneratorSpec("1x", 1)
        with pytest.raises(ChowRingError, match="degree >= 1"):
            GeneratorSpec("x", 0)

    def test_unknown_generator_in_text(self):
        with pytest.raises(ChowRingError, match="Unknown generator"):
            _p(2).parse("h + z")

    def test_mixed_varieties(self):
        a, b = _p(2), _p(2)
        with pytest.raises(ChowRingError, match="Mixed-variety"):
            a.gen("h") + b.gen("h")
        with pytest.raises(ChowRingError, match="integrated on"):
            a.integrate(b.gen("h") ** 2)


class TestSeries:
    def test_inverse(self):
        p3 = _p(3)
        c = p3.parse("1 + 4*h + 6*h**2")
        assert c * c.inverse() == 1

    def test_non_invertible(self):
        with pytest.raises(ChowRingError, match="not invertible"):
            _p(2).gen("h").inverse()

    def test_exp_of_hyperplane(self):
        p2 = _p(2)
        h = p2.gen("h")
        assert h.exp() == p2.one() + h + h ** 2 / 2

    def test_exp_requires_no_constant_term(self):
        with pytest.raises(ChowRingError, match="without constant term"):
            _p(2).one().exp()

    def test_components(self):
        p2 = _p(2)
        c = p2.parse("1 + 3*h + 3*h**2")
        assert c.component(1) == p2.gen("h") * 3
        assert c.truncate(1) == p2.parse("1 + 3*h")
        assert c.degrees() == [0, 1, 2]
        assert c.component(2).is_homogeneous(2)

    def test_substitution(self):
        p2 = _p(2)
        c = p2.parse("d*h")
        assert c.subs({"d": 5}) == p2.gen("h") * 5


class TestProducts:
    def test_quadric_surface(self):
        prod = product_variety(_p(1), _p(1))
        assert prod.generator_names == ("h", "h_2")
        h, h2 = prod.gen("h"), prod.gen("h_2")
        assert prod.integrate(h * h2) == 1
        assert prod.integrate((h + h2) ** 2) == 2
        assert prod.integrate(prod.tangent_chern) == 4

    def test_pullback_from_factor(self):
        p1 = _p(1)
        prod = product_variety(p1, _p(2, gen="k"))
        assert prod.pullback(p1.gen("h")) == prod.gen("h")

    def test_pullback_from_foreign_variety(self):
        prod = product_variety(_p(1), _p(1))
        with pytest.raises(ChowRingError, match="is not a stage or factor"):
            prod.pullback(_p(1).gen("h"))


class TestProjectiveBundles:
    def test_trivial_bundle_is_a_product(self):
        p1 = _p(1)
        bundle = projective_bundle(p1, trivial(p1, 2), "z")
        z, h = bundle.gen("z"), bundle.gen("h")
        assert (z ** 2).is_zero()
        assert bundle.integrate(z * h) == 1
        assert bundle.integrate(bundle.tangent_chern) == 4

    def test_hirzebruch_surface(self):
        p1 = _p(1)
        bundle = projective_bundle(p1, from_chern(p1, 2, "1 + h"), "z")
        z = bundle.gen("z")
        assert z ** 2 == z * bundle.gen("h")
        assert bundle.integrate(z ** 2) == 1
        assert bundle.integrate(bundle.tangent_chern) == 4

    def test_pushforward_gives_segre_classes(self):
        p2 = _p(2)
        E = from_chern(p2, 2, "1 + 2*h + 3*h**2")
        bundle = projective_bundle(p2, E, "z")
        z = bundle.gen("z")
        assert bundle.pushforward(z) == p2.one()
        assert bundle.pushforward(z ** 2) == p2.gen("h") * 2
        assert bundle.pushforward(z ** 3) == p2.gen("h") ** 2

    def test_pushforward_needs_a_bundle(self):
        p2 = _p(2)
        with pytest.raises(ChowRingError, match="is not a projective bundle"):
            p2.pushforward(p2.gen("h"))

    def test_rank_preconditions(self):
        p1 = _p(1)
        with pytest.raises(ChowRingError, match="rank >= 2"):
            projective_bundle(p1, trivial(p1, 1), "z")
        with pytest.raises(ChowRingError, match="not on"):
            projective_bundle(p1, trivial(_p(1), 2), "z")


def _a_x():
    X = formal_congruence_surface(ParamContext(CONGRUENCE_PARAMS))
    return tower_ix_ax(X)["A_X"].variety


HOSTS = {
    "P2": lambda: _p(2),
    "P3": lambda: _p(3),
    "G13": lambda: grassmannian_g13(CTX).variety,
    "A_X": _a_x,
}


def _random_raw(rng, variety, max_exponent=3):
    """Unreduced monomials, some far above the top degree."""
    n = len(variety.generator_names)
    return {
        tuple(rng.randint(0, max_exponent) for _ in range(n)): rng.randint(-3, 3)
        for _ in range(rng.randint(1, 5))
    }


def _random_class(rng, variety):
    names = variety.generator_names
    params = variety.context.names
    total = variety.zero()
    for _ in range(rng.randint(1, 4)):
        term = variety.one()
        for _ in range(rng.randint(0, 2)):
            term = term * variety.gen(rng.choice(names))
        term = term * rng.randint(-4, 4) / rng.randint(1, 3)
        if params and rng.random() < 0.3:
            term = term * variety.context.param(rng.choice(params))
        total = total + term
    return total


@pytest.mark.parametrize("host", sorted(HOSTS))
class TestRingProperties:
    def test_normal_form_is_idempotent(self, host):
        variety = HOSTS[host]()
        rng = random.Random(f"normal-form-{host}")
        for _ in range(15):
            reduced = variety.normal_form(_random_raw(rng, variety))
            assert variety.normal_form(reduced) == reduced
            assert all(variety.weighted_degree(m) <= variety.dimension for m, _ in reduced.terms())

    def test_product_is_commutative_and_associative(self, host):
        variety = HOSTS[host]()
        rng = random.Random(f"products-{host}")
        for _ in range(8):
            x, y, z = (_random_class(rng, variety) for _ in range(3))
            assert x * y == y * x
            assert (x * y) * z == x * (y * z)
            assert x * (y + z) == x * y + x * z

    def test_integration_is_linear(self, host):
        variety = HOSTS[host]()
        rng = random.Random(f"integrals-{host}")
        for _ in range(8):
            x, y = _random_class(rng, variety), _random_class(rng, variety)
            assert variety.integrate(x + y) == variety.integrate(x) + variety.integrate(y)
            assert variety.integrate(x * 3) == variety.integrate(x) * 3
            below_top = x.truncate(variety.dimension - 1)
            assert variety.integrate(below_top) == 0

    def test_monomials_reduce_consistently(self, host):
        variety = HOSTS[host]()
        n = len(variety.generator_names)
        rng = random.Random(f"monomials-{host}")
        # reducing m1 + m2 in one step agrees with multiplying reduced factors
        for _ in range(60):
            m1, m2 = (tuple(rng.randint(0, 2) for _ in range(n)) for _ in range(2))
            whole = variety.normal_form({tuple(a + b for a, b in zip(m1, m2)): 1})
            split = variety.normal_form({m1: 1}) * variety.normal_form({m2: 1})
            assert whole == split
