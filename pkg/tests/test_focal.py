from core.exact import ParamContext
from models.result_states import row_passes
from workflows import focal
from workflows.runner import run_scenario


CTX = ParamContext(focal.CONTEXT)
KUMMER = focal.EXAMPLES["kummer"]


class TestFocalSurface:
    def test_intersection_numbers_are_symbolic(self):
        numbers = focal.focal_intersections()
        assert numbers["degree"] == CTX.parse("2*a + 2*g - 2")
        assert numbers["class"] == CTX.parse("2*b + 2*g - 2")

    def test_kummer_congruence(self):
        numbers = focal.focal_intersections()
        assert numbers["degree"].evaluate(KUMMER) == 4
        assert numbers["class"].evaluate(KUMMER) == 4
        assert numbers["mu1"].evaluate(KUMMER) == 12

    def test_hilbert_route_agrees_with_intersections(self):
        invariants = focal.focal_invariants()
        assert invariants.degree == focal.focal_intersections()["degree"]
        assert invariants.sectional_genus == CTX.parse("9*g - 8 - b + k2")

    def test_focal_class_is_linked_to_residual(self):
        ax = focal.congruence_catalog()["A_X"]
        residual, focal_class = focal.linkage_classes()
        assert residual + focal_class == ax.cls("A") * ax.cls("B")

    def test_example_2_4(self):
        degree = focal.focal_intersections()["degree"]
        assert degree.evaluate(focal.EXAMPLES["example_2_4"]) == 8


class TestFocalScenario:
    def test_every_row_has_its_expected_status(self, manifest):
        report = run_scenario("focal", manifest)
        assert len(report.results) == 22
        assert report.report_only == []
        failing = [row.name for row in report.results if not row_passes(row.kind, row.status)]
        assert failing == []

    def test_example_rows_render_numbers(self, manifest):
        report = run_scenario("focal", manifest)
        assert report.row("focal_kummer_mu1").computed == "12"
