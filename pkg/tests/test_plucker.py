import pytest

from core.exact import ParamContext
from models.result_states import STATUS_TYPO, row_passes
from workflows import plucker
from workflows.runner import run_scenario


CTX = ParamContext(plucker.CONTEXT)


class TestElimination:
    def test_bitangent_formula(self):
        b = plucker.eliminate("d", "kappa")["bitangents"]
        assert b == CTX.parse("(mu1**2 - 3*kappa)/2 + 4*d - 5*mu1")

    @pytest.mark.parametrize("example,expected", [("example_5_2", 1), ("example_5_3", 2), ("example_5_4", 28)])
    def test_examples(self, example, expected):
        b = plucker.eliminate("d", "kappa")["bitangents"]
        assert b.evaluate(plucker.EXAMPLES[example]) == expected

    def test_dual_formula_mirrors_the_plane_one(self):
        a = plucker.eliminate("dstar", "kappastar")["bitangents"]
        assert a == CTX.parse("(mu1**2 - 3*kappastar)/2 + 4*dstar - 5*mu1")

    def test_plane_curve_nodes(self):
        nodes = plucker.plane_curve_nodes(CTX.const(36), CTX.const(96), 19)
        assert nodes == 480


class TestPluckerScenario:
    def test_statuses(self, manifest):
        report = run_scenario("plucker", manifest)
        assert all(row_passes(row.kind, row.status) for row in report.results)
        focal = report.row("example54_focal_degree")
        assert focal.status == STATUS_TYPO
        assert focal.computed == "216"
        assert report.row("plucker_example_5_4_kappastar").computed == "96"

    def test_report_only_rows(self, manifest):
        report = run_scenario("plucker", manifest)
        names = [row.name for row in report.report_only]
        assert names == [
            "plucker_example_5_2_flexes",
            "plucker_example_5_3_flexes",
            "plucker_example_5_4_flexes",
            "plucker_example_5_2_a_value",
        ]
        assert report.report_only[-1].value == "-21/2"
