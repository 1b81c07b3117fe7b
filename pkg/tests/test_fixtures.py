"""The checked-in fixture files must stay in sync with their builders."""

from causalsumm import canonical, load_dag, load_summary
from causalsumm import fixtures


def test_graph_files_match_builders(fixtures_dir):
    for name, build in fixtures.GRAPHS.items():
        assert load_dag(fixtures_dir / f"{name}.json") == build(), name


def test_summary_files_match_builders(fixtures_dir):
    for name, build in fixtures.SUMMARIES.items():
        assert load_summary(fixtures_dir / f"{name}.json") == build(), name


def test_no_stray_fixture_files(fixtures_dir):
    expected = {f"{n}.json" for n in (*fixtures.GRAPHS, *fixtures.SUMMARIES)}
    assert {p.name for p in fixtures_dir.glob("*.json")} == expected


def test_regeneration_is_byte_identical(fixtures_dir, tmp_path):
    fixtures.write_all(tmp_path)
    for path in sorted(fixtures_dir.glob("*.json")):
        assert (tmp_path / path.name).read_bytes() == path.read_bytes(), path.name


def test_redshift_shapes():
    g = fixtures.redshift()
    assert g.num_nodes == 12 and len(g.edges) == 23
    assert len(fixtures.redshift_missing_edge().edges) == 22
    assert len(fixtures.redshift_extra_edges().edges) == 28


def test_redshift_perturbations_share_nodes():
    g = fixtures.redshift()
    assert fixtures.redshift_missing_edge().nodes == g.nodes
    assert fixtures.redshift_extra_edges().nodes == g.nodes
    assert fixtures.redshift_missing_edge().edges < g.edges
    assert g.edges < fixtures.redshift_extra_edges().edges


def test_h3_canonical_fixture_is_the_canonical_dag():
    assert fixtures.h3_canonical() == canonical(fixtures.h3())
