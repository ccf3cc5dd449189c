"""Exhaustive reference procedures used to certify the solvers and reductions.

These deliberately share no code with :mod:`dagreduce.solvers`.
"""

from __future__ import annotations

import itertools

import numpy as np

from .errors import InputTooLargeError
from .graph import WeightedDag
from .instances import Assignment, CnfFormula, SubsetSumInstance, SubsetWitness

SUBSET_SUM_EXHAUSTIVE_MAX_N = 24
SAT_EXHAUSTIVE_MAX_VARS = 20


def subset_sum_oracle(
    instance: SubsetSumInstance, *, max_n: int = SUBSET_SUM_EXHAUSTIVE_MAX_N
) -> SubsetWitness | None:
    """Lexicographically smallest non-empty zero-sum index subset, or None."""
    if instance.n > max_n:
        raise InputTooLargeError(f"n = {instance.n} exceeds the exhaustive bound {max_n}")
    a = instance.elements
    n = len(a)
    chosen: list[int] = []

    # Pre-order DFS over increasing index sequences visits them in lexicographic order.
    def search(start: int, total: int) -> bool:
        for i in range(start, n):
            chosen.append(i + 1)
            if total + a[i] == 0 or search(i + 1, total + a[i]):
                return True
            chosen.pop()
        return False

    return SubsetWitness(chosen) if search(0, 0) else None


def sat_oracle(
    formula: CnfFormula, *, max_vars: int = SAT_EXHAUSTIVE_MAX_VARS
) -> Assignment | None:
    """First satisfying assignment with variable 1 most significant, False before True."""
    if formula.num_vars > max_vars:
        raise InputTooLargeError(
            f"{formula.num_vars} variables exceed the exhaustive bound {max_vars}"
        )
    clauses = [[(lit.variable - 1, not lit.negated) for lit in c] for c in formula.clauses]
    for values in itertools.product((False, True), repeat=formula.num_vars):
        if all(any(values[v] == want for v, want in c) for c in clauses):
            return Assignment(values)
    return None


def adjacency_matrix(dag: WeightedDag) -> np.ndarray:
    m = np.zeros((dag.num_vertices, dag.num_vertices), dtype=bool)
    for u, v, _ in dag.arcs:
        m[u, v] = True
    return m


def boolean_matrix_power(m: np.ndarray, k: int) -> np.ndarray:
    """``m**k`` over the boolean semiring, by repeated squaring."""
    n = m.shape[0]
    result = np.eye(n, dtype=bool)
    base = m.astype(bool)
    while k:
        if k & 1:
            result = (result.astype(np.int64) @ base.astype(np.int64)) > 0
        base = (base.astype(np.int64) @ base.astype(np.int64)) > 0
        k >>= 1
    return result


def has_walk_of_length(dag: WeightedDag, k: int) -> bool:
    """(source, target) entry of the boolean k-th power of the adjacency matrix."""
    return bool(boolean_matrix_power(adjacency_matrix(dag), k)[dag.source, dag.target])
