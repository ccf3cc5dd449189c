"""Seeded instance generators and round-trip verification campaigns.

Each trial draws its randomness from ``SeedSequence([seed, trial_index])``,
so a trial's instance depends only on the campaign seed and its index; the
trials can run in any order or in parallel and the report is unchanged.
"""

from __future__ import annotations

import hashlib
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence, Union

import numpy as np

from .errors import DagReduceError, OracleLimitError
from .formats import serialize_cnf, serialize_dag, serialize_subsetsum
from .graph import WeightedDag
from .instances import CnfFormula, Literal, SubsetSumInstance
from .oracles import (
    SAT_EXHAUSTIVE_MAX_VARS,
    SUBSET_SUM_EXHAUSTIVE_MAX_N,
    has_walk_of_length,
    sat_oracle,
    subset_sum_oracle,
)
from .reductions import (
    extract_assignment,
    extract_subset,
    lift_assignment,
    lift_subset,
    reduce_sat_to_irrpath,
    reduce_ss_to_kpath,
    reduce_ss_to_nullpath,
    translation_offset,
)
from .report import TrialRecord, VerificationReport
from .solvers import (
    Criterion,
    check_witness,
    enumerate_paths,
    length_k_layers,
    solve_irreducible_path,
    solve_k_weighted_path,
    solve_null_weighted_path,
    solve_path_of_length_k,
)

SeedLike = Union[int, Sequence[int], np.random.Generator]

KINDS = ("nullpath", "kpath", "irrpath", "solver-equivalence")

PAPER_SUBSET_SUM = SubsetSumInstance([4, 2, -5])
PAPER_FORMULA = CnfFormula(4, [[1, 2, -3], [4, -1], [-1, -4, 3]])
# second pinned trial of each campaign: the smallest variation with the opposite answer
PINNED_SUBSET_SUMS = (PAPER_SUBSET_SUM, SubsetSumInstance([4, 2, -6]))
PINNED_FORMULAS = (PAPER_FORMULA, CnfFormula(1, [[1], [-1]]))


def _rng(seed: SeedLike) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(np.random.SeedSequence(seed))


def trial_rng(seed: int, index: int) -> np.random.Generator:
    return _rng([seed, index])


# -- generators -------------------------------------------------------------------


def gen_subsetsum(max_n: int, value_range: tuple[int, int], seed: SeedLike) -> SubsetSumInstance:
    """``n`` uniform in ``[0, max_n]``, elements uniform in the closed ``value_range``."""
    rng = _rng(seed)
    lo, hi = value_range
    n = int(rng.integers(0, max_n, endpoint=True))
    return SubsetSumInstance(int(x) for x in rng.integers(lo, hi, size=n, endpoint=True))


def gen_cnf(max_vars: int, max_clauses: int, max_width: int, seed: SeedLike) -> CnfFormula:
    """Random CNF with 1..max_clauses clauses; no clause repeats a variable."""
    if max_width > max_vars:
        raise ValueError(f"max_width {max_width} exceeds max_vars {max_vars}")
    rng = _rng(seed)
    num_vars = int(rng.integers(1, max_vars, endpoint=True))
    num_clauses = int(rng.integers(1, max_clauses, endpoint=True))
    clauses = []
    for _ in range(num_clauses):
        width = int(rng.integers(1, min(max_width, num_vars), endpoint=True))
        variables = rng.choice(num_vars, size=width, replace=False) + 1
        signs = rng.integers(0, 2, size=width)
        clauses.append([Literal(int(v), bool(neg)) for v, neg in zip(variables, signs)])
    return CnfFormula(num_vars, clauses)


def gen_dag(
    num_vertices: int, arc_probability: float, weight_range: tuple[int, int], seed: SeedLike
) -> WeightedDag:
    """Forward arcs ``(i, j)``, ``i < j``, each kept with ``arc_probability``; s = 0, t = last."""
    if num_vertices < 2:
        raise ValueError("gen_dag needs at least two vertices")
    rng = _rng(seed)
    lo, hi = weight_range
    arcs = []
    for i in range(num_vertices):
        for j in range(i + 1, num_vertices):
            keep = rng.random() < arc_probability
            w = int(rng.integers(lo, hi, endpoint=True))
            if keep:
                arcs.append((i, j, w))
    return WeightedDag(num_vertices, arcs, 0, num_vertices - 1)


def gen_linear_order(num_vertices: int, weight_range: tuple[int, int], seed: SeedLike) -> WeightedDag:
    """Complete transitive tournament on a random vertex permutation with random s != t."""
    if num_vertices < 2:
        raise ValueError("gen_linear_order needs at least two vertices")
    rng = _rng(seed)
    lo, hi = weight_range
    order = [int(v) for v in rng.permutation(num_vertices)]
    arcs = [
        (order[i], order[j], int(rng.integers(lo, hi, endpoint=True)))
        for i in range(num_vertices)
        for j in range(i + 1, num_vertices)
    ]
    s, t = (int(v) for v in rng.choice(num_vertices, size=2, replace=False))
    return WeightedDag(num_vertices, arcs, s, t)


# -- campaigns ----------------------------------------------------------------------


@dataclass(frozen=True)
class CampaignConfig:
    kind: str
    trials: int
    seed: int = 0
    max_n: int = 12
    value_range: tuple[int, int] = (-20, 20)
    max_vars: int = 6
    max_clauses: int = 5
    max_clause_width: int = 3
    dag_size: int = 10
    arc_probabilities: tuple[float, ...] = (0.2, 0.5, 0.8)
    signed_weight_range: tuple[int, int] = (-5, 5)
    natural_weight_range: tuple[int, int] = (0, 5)
    workers: int = 1

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown campaign kind {self.kind!r}; expected one of {KINDS}")
        if self.trials < 1:
            raise ValueError("a campaign needs at least one trial")


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def _check_limits(config: CampaignConfig) -> None:
    if config.kind in ("nullpath", "kpath") and config.max_n > SUBSET_SUM_EXHAUSTIVE_MAX_N:
        raise OracleLimitError(f"max_n {config.max_n} > oracle bound {SUBSET_SUM_EXHAUSTIVE_MAX_N}")
    if config.kind == "irrpath":
        if config.max_vars > SAT_EXHAUSTIVE_MAX_VARS:
            raise OracleLimitError(f"max_vars {config.max_vars} > oracle bound {SAT_EXHAUSTIVE_MAX_VARS}")
        if config.max_clause_width > config.max_vars:
            raise OracleLimitError("max_clause_width cannot exceed max_vars")
    if config.kind == "solver-equivalence" and not 2 <= config.dag_size <= 16:
        raise OracleLimitError(f"dag_size {config.dag_size} outside the enumeration range 2..16")


def _subset_sum_trial(config: CampaignConfig, index: int, reducer: Callable | None) -> TrialRecord:
    if index < len(PINNED_SUBSET_SUMS):
        instance = PINNED_SUBSET_SUMS[index]
    else:
        instance = gen_subsetsum(config.max_n, config.value_range, trial_rng(config.seed, index))
    oracle = subset_sum_oracle(instance)
    checks: dict[str, bool] = {}

    if config.kind == "nullpath":
        dag = (reducer or reduce_ss_to_nullpath)(instance)
        outcome = solve_null_weighted_path(dag)
        criterion, k = Criterion.NULL_WEIGHT, None
    else:
        kinst = (reducer or reduce_ss_to_kpath)(instance)
        dag, k = kinst.dag, kinst.k
        p = translation_offset(instance)
        checks["k_formula"] = kinst.p == p and kinst.k == (instance.n + 1) * p
        checks["weights_nonnegative"] = all(w >= 0 for _, _, w in dag.arcs)
        outcome = solve_k_weighted_path(dag, k)
        criterion = Criterion.WEIGHT_K

    if outcome.witness is not None:
        checks["solver_witness"] = check_witness(dag, outcome.witness, criterion, k)
        try:
            checks["extracted_zero_sum"] = extract_subset(outcome.witness, instance).is_zero_sum(instance)
        except DagReduceError:
            checks["extracted_zero_sum"] = False
    if oracle is not None:
        checks["lifted_witness"] = check_witness(dag, lift_subset(oracle, instance), criterion, k)
    return TrialRecord(
        index=index,
        digest=_digest(serialize_subsetsum(instance)),
        oracle_answer=oracle is not None,
        solver_answer=outcome.answer,
        agree=(oracle is not None) == outcome.answer,
        witness_checks=checks,
    )


def _sat_trial(config: CampaignConfig, index: int, reducer: Callable | None) -> TrialRecord:
    if index < len(PINNED_FORMULAS):
        formula = PINNED_FORMULAS[index]
    else:
        formula = gen_cnf(
            config.max_vars, config.max_clauses, config.max_clause_width, trial_rng(config.seed, index)
        )
    oracle = sat_oracle(formula)
    inst = (reducer or reduce_sat_to_irrpath)(formula)
    checks: dict[str, bool] = {"k_formula": inst.k == formula.num_clauses + 1}
    outcome = solve_irreducible_path(inst.dag, inst.k)
    if outcome.witness is not None:
        checks["solver_witness"] = check_witness(inst.dag, outcome.witness, Criterion.IRREDUCIBLE_K, inst.k)
        try:
            checks["extracted_satisfies"] = formula.is_satisfied_by(
                extract_assignment(outcome.witness, inst, formula)
            )
        except DagReduceError:
            checks["extracted_satisfies"] = False
    if oracle is not None:
        lifted = lift_assignment(oracle, inst, formula)
        checks["lifted_witness"] = check_witness(inst.dag, lifted, Criterion.IRREDUCIBLE_K, inst.k)
    return TrialRecord(
        index=index,
        digest=_digest(serialize_cnf(formula)),
        oracle_answer=oracle is not None,
        solver_answer=outcome.answer,
        agree=(oracle is not None) == outcome.answer,
        witness_checks=checks,
    )


def compare_solvers(signed: WeightedDag, natural: WeightedDag) -> tuple[dict[str, bool], list[str]]:
    """Check all four solvers against path enumeration on a pair of same-shape DAGs.

    Returns per-check pass flags and human-readable mismatch notes.
    """
    checks: dict[str, bool] = {}
    notes: list[str] = []
    n = signed.num_vertices

    def record(name: str, expected: bool, outcome, criterion: Criterion, dag: WeightedDag, k=None):
        ok = outcome.answer == expected
        if outcome.witness is not None:
            ok = ok and check_witness(dag, outcome.witness, criterion, k)
        checks[name] = checks.get(name, True) and ok
        if not ok:
            notes.append(f"{name} k={k}: expected {expected}, solver {outcome.answer}")

    paths = enumerate_paths(signed).paths
    weights = [sum(signed.weight(u, v) for u, v in zip(p.vertices, p.vertices[1:])) for p in paths]
    record("nullpath", 0 in weights, solve_null_weighted_path(signed), Criterion.NULL_WEIGHT, signed)

    nat_paths = enumerate_paths(natural).paths
    nat_weights = {sum(natural.weight(u, v) for u, v in zip(p.vertices, p.vertices[1:])) for p in nat_paths}
    top = max((w for _, _, w in natural.arcs), default=0) * (n - 1) + 1
    for k in range(top + 1):
        record("kpath", k in nat_weights, solve_k_weighted_path(natural, k), Criterion.WEIGHT_K, natural, k)

    lengths = {len(p) - 1 for p in paths}
    irreducible = {len(p) - 1 for p in paths if _brute_irreducible(signed, p.vertices)}
    for k in range(1, n + 1):
        length_outcome = solve_path_of_length_k(signed, k)
        record("length", k in lengths, length_outcome, Criterion.LENGTH_K, signed, k)
        checks["length_vs_matrix_power"] = checks.get("length_vs_matrix_power", True) and (
            length_outcome.answer == has_walk_of_length(signed, k)
        )
        if k < n:
            record("irrpath", k in irreducible, solve_irreducible_path(signed, k), Criterion.IRREDUCIBLE_K, signed, k)
    return checks, notes


def _brute_irreducible(dag: WeightedDag, vertices: Sequence[int]) -> bool:
    return all(
        dag.has_arc(vertices[i], vertices[j]) == (j == i + 1)
        for i in range(len(vertices))
        for j in range(i + 1, len(vertices))
    )


def _equivalence_trial(config: CampaignConfig, index: int) -> TrialRecord:
    rng = trial_rng(config.seed, index)
    n = int(rng.integers(2, config.dag_size, endpoint=True))
    prob = float(config.arc_probabilities[int(rng.integers(len(config.arc_probabilities)))])
    signed = gen_dag(n, prob, config.signed_weight_range, rng)
    lo, hi = config.natural_weight_range
    natural = signed.with_arcs((u, v, int(rng.integers(lo, hi, endpoint=True))) for u, v, _ in signed.arcs)
    checks, notes = compare_solvers(signed, natural)
    agree = all(checks.values())
    return TrialRecord(
        index=index,
        digest=_digest(serialize_dag(signed) + serialize_dag(natural)),
        oracle_answer=True,
        solver_answer=agree,
        agree=agree,
        witness_checks=checks,
        note="; ".join(notes),
    )


def run_trial(config: CampaignConfig, index: int, reducer: Callable | None = None) -> TrialRecord:
    started = time.perf_counter()
    if config.kind in ("nullpath", "kpath"):
        record = _subset_sum_trial(config, index, reducer)
    elif config.kind == "irrpath":
        record = _sat_trial(config, index, reducer)
    else:
        record = _equivalence_trial(config, index)
    return TrialRecord(
        index=record.index,
        digest=record.digest,
        oracle_answer=record.oracle_answer,
        solver_answer=record.solver_answer,
        agree=record.agree,
        witness_checks=record.witness_checks,
        elapsed=time.perf_counter() - started,
        note=record.note,
    )


def _safe_trial(config: CampaignConfig, index: int, reducer: Callable | None) -> TrialRecord:
    try:
        return run_trial(config, index, reducer)
    except DagReduceError as exc:
        return TrialRecord(index, "", False, False, False, {}, note=f"{type(exc).__name__}: {exc}")


def run_campaign(
    config: CampaignConfig,
    *,
    reducer: Callable | None = None,
    progress: Callable[[TrialRecord], None] | None = None,
) -> VerificationReport:
    """Run ``config.trials`` independent trials and collect them in index order.

    ``reducer`` replaces the campaign's reduction (used for mutation testing).
    A trial that raises is recorded as a failure, never propagated.
    """
    _check_limits(config)
    indices = range(config.trials)
    if config.workers > 1:
        with ThreadPoolExecutor(config.workers) as pool:
            records = list(pool.map(lambda i: _safe_trial(config, i, reducer), indices))
        if progress:
            for r in records:
                progress(r)
    else:
        records = []
        for i in indices:
            records.append(_safe_trial(config, i, reducer))
            if progress:
                progress(records[-1])
    return VerificationReport(config.kind, config.seed, tuple(records))


def length_dp_matches_matrix_power(dag: WeightedDag, k: int) -> bool:
    """Layered reachability at level ``k`` vs the boolean ``M^k`` (s, t) entry."""
    return (dag.target in length_k_layers(dag, k)[k]) == has_walk_of_length(dag, k)
