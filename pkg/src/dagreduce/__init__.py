"""Reductions from SUBSET SUM and CNF-SAT to path problems in DAGs, with exact
solvers, witness maps and a seeded verification harness."""

from .errors import DagReduceError
from .graph import (
    LinearOrderCertificate,
    PathCheck,
    PathWitness,
    WeightedDag,
    check_path,
    is_irreducible,
    is_linear_order,
    topological_order,
)
from .harness import CampaignConfig, gen_cnf, gen_dag, gen_subsetsum, run_campaign
from .instances import Assignment, CnfFormula, Literal, SubsetSumInstance, SubsetWitness
from .oracles import sat_oracle, subset_sum_oracle
from .reductions import (
    IrrPathInstance,
    KPathInstance,
    extract_assignment,
    extract_subset,
    lift_assignment,
    lift_subset,
    reduce_sat_to_irrpath,
    reduce_ss_to_kpath,
    reduce_ss_to_nullpath,
)
from .report import TrialRecord, VerificationReport
from .solvers import (
    Criterion,
    SolveOutcome,
    check_witness,
    enumerate_paths,
    solve_irreducible_path,
    solve_k_weighted_path,
    solve_null_weighted_path,
    solve_path_of_length_k,
)

__version__ = "0.1.0"
