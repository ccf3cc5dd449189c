"""Exit criteria: seeded round-trip campaigns, pinned paper examples and format laws.

Each test records a PASS/FAIL line that is printed in the pytest terminal
summary (section "acceptance criteria").
"""

import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_RESULTS
from dagreduce.formats import (
    WitnessDocument,
    emit_witness,
    parse_cnf,
    parse_dag,
    parse_report,
    parse_subsetsum,
    parse_witness,
    serialize_cnf,
    serialize_dag,
    serialize_report,
    serialize_subsetsum,
    serialize_witness,
)
from dagreduce.graph import check_path, is_irreducible
from dagreduce.harness import (
    PAPER_FORMULA,
    PAPER_SUBSET_SUM,
    CampaignConfig,
    gen_cnf,
    gen_dag,
    gen_linear_order,
    gen_subsetsum,
    run_campaign,
    trial_rng,
)
from dagreduce.oracles import has_walk_of_length
from dagreduce.reductions import (
    extract_assignment,
    reduce_sat_to_irrpath,
    reduce_ss_to_kpath,
    reduce_ss_to_nullpath,
)
from dagreduce.report import TrialRecord, VerificationReport
from dagreduce.solvers import (
    Criterion,
    check_witness,
    length_k_layers,
    solve_irreducible_path,
    solve_k_weighted_path,
    solve_null_weighted_path,
    solve_path_of_length_k,
)

TRIALS = 200
SEED = 20240601


def record(number, passed, detail):
    ACCEPTANCE_RESULTS[number] = (bool(passed), detail)
    print(f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {detail}")


def timed_campaign(config, **kwargs):
    started = time.perf_counter()
    report = run_campaign(config, **kwargs)
    return report, time.perf_counter() - started


def test_criterion_1_subset_sum_to_null_path():
    report, elapsed = timed_campaign(CampaignConfig("nullpath", TRIALS, seed=SEED, max_n=12, value_range=(-20, 20)))
    yes = [r for r in report.records if r.solver_answer]
    extracted_ok = all(r.witness_checks.get("extracted_zero_sum") for r in yes)
    passed = report.all_agree and report.agreements == TRIALS and extracted_ok and elapsed <= 10.0
    record(1, passed, f"{report.agreements}/{report.trials} agree, {len(yes)} yes-trials with zero-sum extraction, {elapsed:.2f}s")
    assert report.agreements == TRIALS, report.failures
    assert extracted_ok
    assert elapsed <= 10.0


def test_criterion_2_subset_sum_to_k_path():
    config = CampaignConfig("kpath", TRIALS, seed=SEED, max_n=12, value_range=(-20, 20))
    report, elapsed = timed_campaign(config)
    formula_ok = all(r.witness_checks["k_formula"] and r.witness_checks["weights_nonnegative"] for r in report.records)
    # independent recomputation of P and K on the same instances
    recomputed = True
    for i in range(2, TRIALS):
        inst = gen_subsetsum(12, (-20, 20), trial_rng(SEED, i))
        kinst = reduce_ss_to_kpath(inst)
        p = max([0] + [-a for a in inst.elements])
        recomputed &= kinst.p == p and kinst.k == (inst.n + 1) * p
        recomputed &= min(w for _, _, w in kinst.dag.arcs) >= 0
    yes = [r for r in report.records if r.solver_answer]
    extracted_ok = all(r.witness_checks.get("extracted_zero_sum") for r in yes)
    passed = report.agreements == TRIALS and formula_ok and recomputed and extracted_ok and elapsed <= 10.0
    record(2, passed, f"{report.agreements}/{report.trials} agree, K=(n+1)P and w>=0 on all, {elapsed:.2f}s")
    assert report.agreements == TRIALS, report.failures
    assert formula_ok and recomputed and extracted_ok
    assert elapsed <= 10.0


def test_criterion_3_sat_to_irreducible_path():
    config = CampaignConfig("irrpath", TRIALS, seed=SEED, max_vars=6, max_clauses=5, max_clause_width=3)
    report, elapsed = timed_campaign(config)
    yes = [r for r in report.records if r.solver_answer]
    extracted_ok = all(r.witness_checks.get("extracted_satisfies") for r in yes)
    passed = report.agreements == TRIALS and extracted_ok and elapsed <= 10.0
    record(3, passed, f"{report.agreements}/{report.trials} agree, {len(yes)} satisfying extractions, {elapsed:.2f}s")
    assert report.agreements == TRIALS, report.failures
    assert extracted_ok
    assert elapsed <= 10.0


def test_criterion_4_pinned_paper_examples():
    failures = []
    null_dag = reduce_ss_to_nullpath(PAPER_SUBSET_SUM)
    if (null_dag.num_vertices, null_dag.num_arcs) != (5, 10):
        failures.append("reduction 1 size")
    table = {(i, j): ((4, 2, -5)[j - 1] if j <= 3 else (1 if i == 0 else 0)) for i in range(5) for j in range(i + 1, 5)}
    if {(u, v): w for u, v, w in null_dag.arcs} != table:
        failures.append("reduction 1 weight table")
    if solve_null_weighted_path(null_dag).answer:
        failures.append("reduction 1 answer")

    kinst = reduce_ss_to_kpath(PAPER_SUBSET_SUM)
    if (kinst.p, kinst.k) != (5, 20):
        failures.append(f"P, K = {kinst.p}, {kinst.k}")
    if solve_k_weighted_path(kinst.dag, kinst.k).answer:
        failures.append("reduction 2 answer")

    irr = reduce_sat_to_irrpath(PAPER_FORMULA)
    if (irr.dag.num_vertices, irr.dag.num_arcs, irr.k) != (10, 18, 4):
        failures.append(f"reduction 3 size {irr.dag.num_vertices}/{irr.dag.num_arcs}/{irr.k}")
    outcome = solve_irreducible_path(irr.dag, irr.k)
    if not (
        outcome.answer
        and check_path(irr.dag, outcome.witness).length == 4
        and is_irreducible(irr.dag, outcome.witness)
        and PAPER_FORMULA.is_satisfied_by(extract_assignment(outcome.witness, irr, PAPER_FORMULA))
    ):
        failures.append("reduction 3 witness")
    record(4, not failures, "exact match" if not failures else "mismatch: " + ", ".join(failures))
    assert not failures


def test_criterion_5_solvers_match_enumeration():
    config = CampaignConfig(
        "solver-equivalence",
        TRIALS,
        seed=SEED,
        dag_size=10,
        arc_probabilities=(0.2, 0.5, 0.8),
        signed_weight_range=(-5, 5),
        natural_weight_range=(0, 5),
    )
    report, elapsed = timed_campaign(config)
    passed = report.agreements == TRIALS and elapsed <= 30.0
    record(5, passed, f"{report.agreements}/{report.trials} DAGs agree on all four solvers, {elapsed:.2f}s")
    assert report.agreements == TRIALS, [report.records[i].note for i in report.failures]
    assert elapsed <= 30.0


def test_criterion_6_linear_order_laws():
    bad = []
    for trial in range(50):
        rng = np.random.default_rng([SEED, 6, trial])
        n = int(rng.integers(2, 12, endpoint=True))
        dag = gen_linear_order(n, (-5, 5), rng)
        if solve_irreducible_path(dag, 1).answer != dag.has_arc(dag.source, dag.target):
            bad.append((trial, 1))
        for k in range(2, n + 1):
            if solve_irreducible_path(dag, k).answer:
                bad.append((trial, k))
    record(6, not bad, f"50 linear orders, {len(bad)} violations")
    assert not bad


def test_criterion_7_layered_dp_equals_matrix_power():
    checked = mismatches = 0
    for trial in range(100):
        rng = np.random.default_rng([SEED, 7, trial])
        n = int(rng.integers(2, 8, endpoint=True))
        dag = gen_dag(n, float(rng.choice([0.2, 0.5, 0.8])), (0, 0), rng)
        for k in range(1, n):
            checked += 1
            layered = dag.target in length_k_layers(dag, k)[k]
            if layered != has_walk_of_length(dag, k) or solve_path_of_length_k(dag, k).answer != layered:
                mismatches += 1
    record(7, mismatches == 0, f"{checked} (DAG, K) pairs over 100 DAGs, {mismatches} mismatches")
    assert mismatches == 0


def _random_report(rng):
    records = tuple(
        TrialRecord(
            index=i,
            digest="".join(rng.choice(list("0123456789abcdef"), 16)),
            oracle_answer=bool(rng.integers(2)),
            solver_answer=bool(rng.integers(2)),
            agree=bool(rng.integers(2)),
            witness_checks={"solver_witness": bool(rng.integers(2))},
            elapsed=float(rng.random()),
        )
        for i in range(int(rng.integers(0, 5)))
    )
    return VerificationReport("irrpath", int(rng.integers(0, 2**63)), records)


def test_criterion_8_format_round_trips():
    counts = dict.fromkeys(["subsetsum", "cnf", "dag", "witness", "report"], 0)
    failures = []

    def check(kind, value, serialize, parse):
        text = serialize(value)
        back = parse(text)
        if back != value or serialize(back) != text:
            failures.append((kind, text))
        counts[kind] += 1

    for trial in range(TRIALS):
        rng = np.random.default_rng([SEED, 8, trial])
        check("subsetsum", gen_subsetsum(30, (-(2**62), 2**62), rng), serialize_subsetsum, parse_subsetsum)
        check("cnf", gen_cnf(10, 8, 4, rng), serialize_cnf, parse_cnf)
        dag = gen_dag(int(rng.integers(2, 12)), 0.5, (-1000, 1000), rng)
        check("dag", dag, serialize_dag, parse_dag)
        k = int(rng.integers(1, dag.num_vertices))
        outcome = solve_path_of_length_k(dag, k)
        text = emit_witness(outcome, "lengthk", dag, k)
        doc = parse_witness(text)
        if serialize_witness(doc) != text or (doc.witness is not None) != outcome.answer:
            failures.append(("witness", text))
        counts["witness"] += 1
        check("report", _random_report(rng), serialize_report, parse_report)
    passed = not failures and min(counts.values()) >= TRIALS
    record(8, passed, f"{counts} round-trips, {len(failures)} failures")
    assert not failures


def test_criterion_9_mutation_sensitivity():
    def mutant(instance):
        dag = reduce_ss_to_nullpath(instance)
        t = instance.n + 1
        return dag.with_arcs((u, v, 0 if (u, v) == (0, t) else w) for u, v, w in dag.arcs)

    report, _ = timed_campaign(CampaignConfig("nullpath", TRIALS, seed=SEED), reducer=mutant)
    disagreements = sum(not r.agree for r in report.records)
    record(9, disagreements >= 1, f"direct arc weight 0: {disagreements}/{TRIALS} trials disagree")
    assert disagreements >= 1
