import io

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from causalsumm import (
    REPORT_COLUMNS,
    ComparisonReport,
    CycleError,
    Dag,
    GenSpec,
    SizeLimitError,
    ValidationError,
    additional_edges,
    brute_force_summarize,
    compare,
    gen_random_dag,
    implication_percentage,
    perturb,
    random_summarize,
    report_row,
    trivial_summary,
    write_report,
)
from causalsumm.bench import _summary_from_partition
from causalsumm.fixtures import redshift, redshift_missing_edge
from causalsumm.graph_core import topological_order
from oracles import all_set_partitions


class TestGenRandomDag:
    def test_spec_validation(self):
        with pytest.raises(ValidationError):
            GenSpec(n=0, density=0.5)
        with pytest.raises(ValidationError):
            GenSpec(n=3, density=1.5)

    def test_density_extremes(self):
        empty = gen_random_dag(GenSpec(n=6, density=0.0, seed=1))
        full = gen_random_dag(GenSpec(n=6, density=1.0, seed=1))
        assert len(empty.edges) == 0
        assert len(full.edges) == 6 * 5 // 2

    def test_single_node(self):
        g = gen_random_dag(GenSpec(n=1, density=1.0))
        assert g.nodes == ("X1",) and not g.edges

    def test_labels_are_zero_padded(self):
        g = gen_random_dag(GenSpec(n=12, density=0.0))
        assert g.nodes[0] == "X01" and g.nodes[-1] == "X12"
        assert sorted(g.nodes) == list(g.nodes)

    def test_deterministic_in_seed(self):
        spec = GenSpec(n=8, density=0.4, seed=42)
        assert gen_random_dag(spec) == gen_random_dag(spec)
        other = gen_random_dag(GenSpec(n=8, density=0.4, seed=43))
        assert gen_random_dag(spec) != other

    @given(st.integers(0, 10_000), st.sampled_from([0.2, 0.5, 0.8]))
    @settings(max_examples=40)
    def test_always_a_dag(self, seed, density):
        # Dag construction itself rejects cycles, so surviving is the test
        g = gen_random_dag(GenSpec(n=7, density=density, seed=seed))
        assert g.num_nodes == 7


class TestBruteForce:
    def test_running_example(self, g1):
        h = brute_force_summarize(g1, k=4)
        assert additional_edges(h) == 1
        assert set(h.quotient.nodes) == {"A", "BC", "D", "E"}

    def test_tighter_budget(self, g1):
        assert additional_edges(brute_force_summarize(g1, k=3)) == 2

    def test_k_equal_n_is_free(self, g1):
        h = brute_force_summarize(g1, k=5)
        assert additional_edges(h) == 0
        assert h == trivial_summary(g1)

    def test_guards(self, g1, redshift):
        with pytest.raises(SizeLimitError):
            brute_force_summarize(redshift, k=5)
        with pytest.raises(ValidationError):
            brute_force_summarize(g1, k=0)
        with pytest.raises(ValidationError):
            brute_force_summarize(g1, k=6)

    @pytest.mark.parametrize("seed", range(6))
    def test_matches_exhaustive_partition_scan(self, seed):
        # independent minimum: score every acyclic partition directly
        g = gen_random_dag(GenSpec(n=5, density=0.5, seed=seed))
        order = topological_order(g)
        for k in (2, 3):
            scores = []
            for blocks in all_set_partitions(order):
                if len(blocks) > k:
                    continue
                try:
                    h = _summary_from_partition(g, order, blocks)
                except CycleError:
                    continue
                scores.append(additional_edges(h))
            assert additional_edges(brute_force_summarize(g, k)) == min(scores)


class TestRandomSummarize:
    def test_reaches_the_budget(self, g1):
        h = random_summarize(g1, k=3, seed=5)
        assert h.quotient.num_nodes == 3

    def test_k_equal_n_is_trivial(self, g1):
        assert random_summarize(g1, k=5, seed=0) == trivial_summary(g1)

    def test_deterministic_in_seed(self, redshift):
        a = random_summarize(redshift, k=6, seed=11)
        b = random_summarize(redshift, k=6, seed=11)
        assert a == b

    def test_single_cluster_possible_on_a_chain(self):
        chain = Dag("ABC", [("A", "B"), ("B", "C")])
        h = random_summarize(chain, k=1, seed=2)
        assert h.quotient.num_nodes == 1

    def test_infeasible_k(self, g1):
        with pytest.raises(ValidationError):
            random_summarize(g1, k=0)


class TestImplicationPercentage:
    def test_running_example_pairs(self, h1, h2, h3, g1):
        assert implication_percentage(h2, h1) == 0.0
        assert implication_percentage(h3, h1) == 50.0
        assert implication_percentage(h1, h2) == 100.0
        assert implication_percentage(trivial_summary(g1), h2) == 100.0

    def test_every_summary_implies_itself(self, h1, h2, h3, h4):
        for h in (h1, h2, h3, h4):
            assert implication_percentage(h, h) == 100.0

    def test_empty_basis_counts_as_full(self):
        lone = trivial_summary(Dag("A", []))
        assert implication_percentage(lone, lone) == 100.0

    def test_base_graphs_must_match(self, h1, redshift):
        with pytest.raises(ValidationError, match="same base"):
            implication_percentage(h1, trivial_summary(redshift))

    def test_compare_bundles_both_directions(self, h1, h2):
        report = compare(h1, h2)
        assert report == ComparisonReport(
            implied_a_by_b=0.0,
            implied_b_by_a=100.0,
            additional_edges_a=1,
            additional_edges_b=3,
        )


class TestPerturb:
    def test_noop_is_identity(self, redshift):
        assert perturb(redshift, add=0, remove=0, seed=9) == redshift

    def test_seed_13_drops_the_cache_hit_edge(self, redshift):
        # the one-edge removal used in the robustness fixtures
        assert perturb(redshift, add=0, remove=1, seed=13) == redshift_missing_edge()

    def test_deterministic_in_seed(self, redshift):
        a = perturb(redshift, add=5, remove=1, seed=3)
        assert a == perturb(redshift, add=5, remove=1, seed=3)
        assert len(a.edges) == len(redshift.edges) + 4

    def test_validation(self, g1):
        with pytest.raises(ValidationError):
            perturb(g1, add=-1, remove=0)
        with pytest.raises(ValidationError):
            perturb(g1, add=0, remove=6)
        full = gen_random_dag(GenSpec(n=4, density=1.0))
        with pytest.raises(ValidationError, match="slots"):
            perturb(full, add=1, remove=0)

    @given(st.integers(0, 10_000))
    @settings(max_examples=40)
    def test_preserves_nodes_and_acyclicity(self, seed):
        g = gen_random_dag(GenSpec(n=8, density=0.4, seed=1))
        p = perturb(g, add=3, remove=2, seed=seed)
        assert p.nodes == g.nodes
        assert len(p.edges) == len(g.edges) + 1


class TestReport:
    def test_row_shape(self):
        spec = GenSpec(n=6, density=0.5, seed=4)
        row = report_row("i0", "random", spec, 3, lambda g: random_summarize(g, 3, 0))
        assert tuple(row) == REPORT_COLUMNS
        assert row["clusters"] == 3
        assert row["n"] == 6 and row["seed"] == 4
        assert row["runtime_ms"] >= 0

    def test_csv_is_sorted_and_line_terminated(self):
        spec = GenSpec(n=5, density=0.5, seed=1)
        rows = [
            report_row("i1", "random", spec, 3, lambda g: random_summarize(g, 3, 0)),
            report_row("i0", "brute", spec, 3, lambda g: brute_force_summarize(g, 3)),
        ]
        out = io.StringIO()
        write_report(rows, out)
        lines = out.getvalue().splitlines()
        assert lines[0] == ",".join(REPORT_COLUMNS)
        assert lines[1].startswith("i0,brute,5,") and lines[2].startswith("i1,random,5,")
        assert out.getvalue().endswith("\n") and "\r" not in out.getvalue()
