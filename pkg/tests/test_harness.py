import dataclasses

import pytest

from dagreduce.errors import OracleLimitError
from dagreduce.formats import serialize_report
from dagreduce.graph import is_linear_order
from dagreduce.harness import (
    PAPER_FORMULA,
    PAPER_SUBSET_SUM,
    CampaignConfig,
    compare_solvers,
    gen_cnf,
    gen_dag,
    gen_linear_order,
    gen_subsetsum,
    run_campaign,
)
from dagreduce.reductions import KPathInstance, reduce_ss_to_kpath, reduce_ss_to_nullpath
from dagreduce.solvers import solve_irreducible_path, solve_null_weighted_path, solve_path_of_length_k


def strip_elapsed(report):
    return [dataclasses.replace(r, elapsed=0.0) for r in report.records]


class TestGenerators:
    def test_subsetsum_is_seeded(self):
        a = gen_subsetsum(3, (-5, 5), 7)
        assert a == gen_subsetsum(3, (-5, 5), 7)
        assert a.n <= 3 and all(-5 <= x <= 5 for x in a.elements)
        assert gen_subsetsum(12, (-20, 20), 99) == gen_subsetsum(12, (-20, 20), 99)

    def test_subsetsum_zero_max(self):
        assert gen_subsetsum(0, (-5, 5), 1).n == 0

    def test_subsetsum_covers_sizes(self):
        sizes = {gen_subsetsum(4, (-1, 1), s).n for s in range(100)}
        assert sizes == {0, 1, 2, 3, 4}

    def test_cnf(self):
        f = gen_cnf(1, 1, 1, 5)
        assert f.num_clauses == 1 and len(f.clauses[0]) == 1
        for seed in range(50):
            f = gen_cnf(6, 5, 3, seed)
            assert f == gen_cnf(6, 5, 3, seed)
            assert 1 <= f.num_clauses <= 5
            for clause in f.clauses:
                assert 1 <= len(clause) <= 3
                assert len({lit.variable for lit in clause}) == len(clause)

    def test_cnf_width_bound(self):
        with pytest.raises(ValueError):
            gen_cnf(2, 2, 3, 0)

    def test_dag_extremes(self):
        full = gen_dag(6, 1.0, (-5, 5), 3)
        assert is_linear_order(full).order == tuple(range(6))
        empty = gen_dag(6, 0.0, (-5, 5), 3)
        assert empty.num_arcs == 0
        assert not solve_null_weighted_path(empty).answer
        assert not any(solve_path_of_length_k(empty, k).answer for k in range(1, 6))
        assert not any(solve_irreducible_path(empty, k).answer for k in range(1, 6))
        assert gen_dag(6, 0.5, (0, 5), 11) == gen_dag(6, 0.5, (0, 5), 11)

    def test_linear_order(self):
        dag = gen_linear_order(7, (0, 3), 4)
        assert is_linear_order(dag) and dag.source != dag.target


class TestCampaigns:
    @pytest.mark.parametrize("kind", ["nullpath", "kpath", "irrpath", "solver-equivalence"])
    def test_small_campaign_agrees(self, kind):
        report = run_campaign(CampaignConfig(kind, 30, seed=5))
        assert report.all_agree, [r for r in report.records if not r.ok]
        assert report.agreements == report.trials == 30

    @pytest.mark.parametrize("kind", ["nullpath", "irrpath", "solver-equivalence"])
    def test_seed_determinism(self, kind):
        config = CampaignConfig(kind, 25, seed=42)
        assert strip_elapsed(run_campaign(config)) == strip_elapsed(run_campaign(config))

    def test_parallel_matches_serial(self):
        serial = run_campaign(CampaignConfig("irrpath", 40, seed=9))
        parallel = run_campaign(CampaignConfig("irrpath", 40, seed=9, workers=4))
        assert strip_elapsed(serial) == strip_elapsed(parallel)

    def test_trial_depends_only_on_seed_and_index(self):
        short = run_campaign(CampaignConfig("nullpath", 10, seed=3))
        long = run_campaign(CampaignConfig("nullpath", 20, seed=3))
        assert [r.digest for r in short.records] == [r.digest for r in long.records[:10]]

    def test_pinned_trials(self):
        ss = run_campaign(CampaignConfig("nullpath", 2, seed=0))
        assert (ss.records[0].oracle_answer, ss.records[0].solver_answer) == (False, False)
        assert (ss.records[1].oracle_answer, ss.records[1].solver_answer) == (True, True)
        sat = run_campaign(CampaignConfig("irrpath", 2, seed=0))
        assert (sat.records[0].oracle_answer, sat.records[0].solver_answer) == (True, True)
        assert sat.records[0].witness_checks["extracted_satisfies"]
        assert not sat.records[1].oracle_answer
        other_seed = run_campaign(CampaignConfig("irrpath", 2, seed=77))
        assert [r.digest for r in other_seed.records] == [r.digest for r in sat.records]

    def test_kpath_records_formula_checks(self):
        report = run_campaign(CampaignConfig("kpath", 10, seed=1))
        assert all(r.witness_checks["k_formula"] and r.witness_checks["weights_nonnegative"] for r in report.records)

    def test_oracle_limits(self):
        with pytest.raises(OracleLimitError):
            run_campaign(CampaignConfig("nullpath", 1, max_n=30))
        with pytest.raises(OracleLimitError):
            run_campaign(CampaignConfig("irrpath", 1, max_vars=25))
        with pytest.raises(ValueError):
            CampaignConfig("bogus", 1)
        with pytest.raises(ValueError):
            CampaignConfig("nullpath", 0)

    def test_progress_callback(self):
        seen = []
        run_campaign(CampaignConfig("nullpath", 4), progress=lambda r: seen.append(r.index))
        assert seen == [0, 1, 2, 3]

    def test_report_serializes(self):
        text = serialize_report(run_campaign(CampaignConfig("kpath", 3)))
        assert text.count("\n") == 4 and '"type":"summary"' in text.splitlines()[-1]


class TestMutations:
    def test_dropping_direct_arc_offset_is_caught(self):
        def mutant(instance):
            dag = reduce_ss_to_nullpath(instance)
            t = instance.n + 1
            return dag.with_arcs((u, v, 0 if (u, v) == (0, t) else w) for u, v, w in dag.arcs)

        report = run_campaign(CampaignConfig("nullpath", 50, seed=2), reducer=mutant)
        assert report.failures
        # the paper instance has no zero-sum subset, yet the mutant's direct arc weighs 0
        first = report.records[0]
        assert (first.oracle_answer, first.solver_answer) == (False, True)

    def test_untranslated_kpath_is_caught(self):
        def mutant(instance):
            kinst = reduce_ss_to_kpath(instance)
            return KPathInstance(kinst.dag, kinst.k + 1, kinst.p)

        assert run_campaign(CampaignConfig("kpath", 30, seed=2), reducer=mutant).failures

    def test_crashing_reducer_is_recorded(self):
        def broken(instance):
            return reduce_ss_to_nullpath(type(instance)([2**62] * 4))

        report = run_campaign(CampaignConfig("nullpath", 3), reducer=broken)
        assert report.failures == [0, 1, 2]
        assert "InputTooLargeError" in report.records[0].note


def test_compare_solvers_on_a_random_dag():
    dag = gen_dag(6, 0.6, (-5, 5), 1)
    natural = dag.with_arcs((u, v, abs(w)) for u, v, w in dag.arcs)
    checks, notes = compare_solvers(dag, natural)
    assert all(checks.values()) and not notes
    assert set(checks) == {"nullpath", "kpath", "length", "length_vs_matrix_power", "irrpath"}


def test_paper_constants():
    assert PAPER_SUBSET_SUM.elements == (4, 2, -5)
    assert PAPER_FORMULA.num_clauses == 3 and PAPER_FORMULA.num_literals == 8
