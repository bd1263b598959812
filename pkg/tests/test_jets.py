from core.exact import ParamContext
from models.result_states import STATUS_MATCH
from workflows import jets
from workflows.runner import run_scenario


CTX = ParamContext(jets.CONTEXT)
KUMMER = jets.EXAMPLES["kummer"]


class TestJetTower:
    def test_ruled_degree(self):
        ruled = jets.jet_degrees()["ruled"]
        assert ruled == CTX.parse("4*a + 4*b + 12*g - 12")
        assert ruled.evaluate(KUMMER) == 16
        assert ruled.subs(jets.EXAMPLES["example_1_14"]) == 20

    def test_kummer_focal_surface_has_no_cusps_or_nodes(self):
        assert jets.jet_degrees()["cuspidal"].evaluate(KUMMER) == 0
        assert jets.nodal_degree().evaluate(KUMMER) == 0

    def test_tower_dimensions(self):
        catalog = jets.jet_catalog()
        assert catalog["D1X"].variety.dimension == 3
        assert catalog["D2X"].variety.dimension == 4
        assert catalog["P3xD2X"].variety.dimension == 7


class TestJetsScenario:
    def test_all_rows_match(self, manifest):
        report = run_scenario("jets", manifest)
        assert len(report.results) == 10
        assert report.rows_by_status() == {STATUS_MATCH: 10}
