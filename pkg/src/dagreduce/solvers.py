"""Exact decision procedures, with witnesses, for the four s-t path problems.

* null weighted path: achievable-sum DP over the topological order
* K weighted path: bitset table over partial sums ``0 .. K`` (non-negative weights)
* path of length K: layered reachability, the (s, t) entry of the boolean ``M^K``
* irreducible (induced) path of length K: pruned depth-first backtracking

All tie-breaks favour the smallest vertex id so witnesses are reproducible.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from typing import Sequence

from .errors import (
    DagReduceError,
    EndpointsEqualError,
    InputTooLargeError,
    NegativeWeightError,
    ResourceLimitError,
)
from .graph import PathWitness, WeightedDag, check_path, is_irreducible, topological_order

DEFAULT_STATE_BUDGET = 10**6
DEFAULT_NODE_BUDGET = 10**6
DEFAULT_TABLE_BUDGET = 10**7
ENUMERATION_FALLBACK_MAX_VERTICES = 20


@dataclass(frozen=True)
class SolveStats:
    states_explored: int = 0
    elapsed: float = field(default=0.0, compare=False)


@dataclass(frozen=True)
class SolveOutcome:
    answer: bool
    witness: PathWitness | None
    stats: SolveStats = SolveStats()

    def __post_init__(self):
        if self.answer != (self.witness is not None):
            raise ValueError("a witness must be present exactly when the answer is yes")

    @property
    def answer_text(self) -> str:
        return "yes" if self.answer else "no"


class Criterion(enum.Enum):
    NULL_WEIGHT = "null-weight"
    WEIGHT_K = "weight-k"
    LENGTH_K = "length-k"
    IRREDUCIBLE_K = "irreducible-k"


def _require_distinct_endpoints(dag: WeightedDag) -> None:
    if dag.source == dag.target:
        raise EndpointsEqualError(f"source and target are both {dag.source}")


def _outcome(path: list[int] | None, states: int, started: float) -> SolveOutcome:
    witness = PathWitness(path) if path is not None else None
    return SolveOutcome(path is not None, witness, SolveStats(states, time.perf_counter() - started))


# -- null weighted path --------------------------------------------------------


def solve_null_weighted_path(
    dag: WeightedDag, *, state_budget: int = DEFAULT_STATE_BUDGET
) -> SolveOutcome:
    """Is there a source-target path of total weight exactly 0?

    Raises :class:`ResourceLimitError` when more than ``state_budget`` distinct
    (vertex, sum) states appear, unless the DAG is small enough
    (<= 20 vertices) to fall back on exhaustive enumeration.
    """
    _require_distinct_endpoints(dag)
    started = time.perf_counter()
    try:
        return _null_path_dp(dag, state_budget, started)
    except ResourceLimitError:
        if dag.num_vertices > ENUMERATION_FALLBACK_MAX_VERTICES:
            raise
    explored = 0
    for path in _iter_paths(dag):
        explored += 1
        if check_path(dag, path).weight_sum == 0:
            return _outcome(list(path), explored, started)
    return _outcome(None, explored, started)


def _null_path_dp(dag: WeightedDag, budget: int, started: float) -> SolveOutcome:
    s, t = dag.source, dag.target
    # sums[v][x] = predecessor of v on the first-found path reaching v with weight x
    sums: list[dict[int, int] | None] = [None] * dag.num_vertices
    sums[s] = {0: -1}
    states = 1
    for v in topological_order(dag):
        if v == s:
            continue
        reached: dict[int, int] = {}
        for u in dag.predecessors(v):
            at_u = sums[u]
            if not at_u:
                continue
            w = dag.weight(u, v)
            for x in at_u:
                reached.setdefault(x + w, u)
        if reached:
            states += len(reached)
            if states > budget:
                raise ResourceLimitError(f"null-path DP exceeded {budget} (vertex, sum) states")
            sums[v] = reached
        if v == t:
            break
    at_t = sums[t]
    if not at_t or 0 not in at_t:
        return _outcome(None, states, started)
    path = [t]
    x = 0
    while path[-1] != s:
        v = path[-1]
        u = sums[v][x]  # type: ignore[index]
        x -= dag.weight(u, v)
        path.append(u)
    path.reverse()
    return _outcome(path, states, started)


# -- K weighted path -----------------------------------------------------------


def solve_k_weighted_path(
    dag: WeightedDag, k: int, *, table_budget: int = DEFAULT_TABLE_BUDGET
) -> SolveOutcome:
    """Is there a source-target path of total weight exactly ``k``?

    Weights must be non-negative. Runs in O(|E| * k) word operations: each
    vertex holds the set of reachable partial sums ``0 .. k`` as one integer
    bitmask, and the witness is traced back from (target, k) choosing the
    smallest feasible predecessor at each step.
    """
    _require_distinct_endpoints(dag)
    if k < 0:
        raise ValueError(f"K must be non-negative, got {k}")
    for u, v, w in dag.arcs:
        if w < 0:
            raise NegativeWeightError(f"arc ({u}, {v}) has weight {w}; K weighted path needs w >= 0")
    if (k + 1) * dag.num_vertices > table_budget:
        raise InputTooLargeError(
            f"table of {dag.num_vertices} x {k + 1} cells exceeds the budget of {table_budget}"
        )
    started = time.perf_counter()
    s, t = dag.source, dag.target
    mask = (1 << (k + 1)) - 1
    reach = [0] * dag.num_vertices
    reach[s] = 1
    for v in topological_order(dag):
        if v == s:
            continue
        bits = 0
        for u in dag.predecessors(v):
            if reach[u]:
                bits |= reach[u] << dag.weight(u, v)
        reach[v] = bits & mask
    states = sum(r.bit_count() for r in reach)
    if not (reach[t] >> k) & 1:
        return _outcome(None, states, started)
    path = [t]
    x = k
    while path[-1] != s or x != 0:
        v = path[-1]
        for u in dag.predecessors(v):
            rest = x - dag.weight(u, v)
            if rest >= 0 and (reach[u] >> rest) & 1:
                path.append(u)
                x = rest
                break
    path.reverse()
    return _outcome(path, states, started)


# -- path of length K ----------------------------------------------------------


def length_k_layers(dag: WeightedDag, k: int) -> list[set[int]]:
    """``layers[l]`` = vertices reachable from the source by exactly ``l`` arcs."""
    layers = [{dag.source}]
    for _ in range(k):
        nxt: set[int] = set()
        for u in layers[-1]:
            nxt.update(dag.successors(u))
        layers.append(nxt)
    return layers


def solve_path_of_length_k(dag: WeightedDag, k: int) -> SolveOutcome:
    """Is there a source-target path with exactly ``k`` arcs? Polynomial time.

    A DAG path visits each vertex at most once, so ``k >= |V|`` is answered
    "no" immediately.
    """
    _require_distinct_endpoints(dag)
    if k <= 0:
        raise ValueError(f"K must be positive, got {k}")
    started = time.perf_counter()
    if k >= dag.num_vertices:
        return _outcome(None, 0, started)
    layers = length_k_layers(dag, k)
    states = sum(len(layer) for layer in layers)
    if dag.target not in layers[k]:
        return _outcome(None, states, started)
    path = [dag.target]
    for level in range(k - 1, -1, -1):
        v = path[-1]
        path.append(next(u for u in dag.predecessors(v) if u in layers[level]))
    path.reverse()
    return _outcome(path, states, started)


# -- irreducible path of length K ----------------------------------------------


def _lengths_to_target(dag: WeightedDag) -> list[int]:
    """Bitmask per vertex: bit l set iff some path of exactly l arcs reaches the target."""
    lengths = [0] * dag.num_vertices
    lengths[dag.target] = 1
    for v in reversed(topological_order(dag)):
        if v == dag.target:
            continue
        bits = 0
        for w in dag.successors(v):
            bits |= lengths[w]
        lengths[v] = bits << 1
    return lengths


def solve_irreducible_path(
    dag: WeightedDag, k: int, *, node_budget: int = DEFAULT_NODE_BUDGET
) -> SolveOutcome:
    """Is there an induced source-target path with exactly ``k`` arcs?

    Backtracking in ascending vertex order. A vertex may extend the partial
    path only if no path vertex other than the current end has an arc into
    it, and only if the target is still reachable in exactly the remaining
    number of arcs.
    """
    _require_distinct_endpoints(dag)
    if k <= 0:
        raise ValueError(f"K must be positive, got {k}")
    started = time.perf_counter()
    lengths = _lengths_to_target(dag)
    s, t = dag.source, dag.target
    if not (lengths[s] >> k) & 1:
        return _outcome(None, 1, started)

    path = [s]
    # blocked[v] > 0 iff some path vertex before the current end has an arc to v
    blocked = [0] * dag.num_vertices
    explored = 1

    def extend(remaining: int) -> bool:
        nonlocal explored
        last = path[-1]
        if remaining == 0:
            return last == t
        for v in dag.successors(last):
            if blocked[v] or not (lengths[v] >> (remaining - 1)) & 1:
                continue
            explored += 1
            if explored > node_budget:
                raise ResourceLimitError(
                    f"irreducible-path search exceeded {node_budget} nodes"
                )
            for w in dag.successors(last):
                blocked[w] += 1
            path.append(v)
            if extend(remaining - 1):
                return True
            path.pop()
            for w in dag.successors(last):
                blocked[w] -= 1
        return False

    if not extend(k):
        return _outcome(None, explored, started)
    if not is_irreducible(dag, path):
        raise AssertionError(f"backtracking produced a reducible path {path}")
    return _outcome(path, explored, started)


# -- witness checking and enumeration ------------------------------------------


def check_witness(
    dag: WeightedDag,
    path: PathWitness | Sequence[int],
    criterion: Criterion,
    k: int | None = None,
) -> bool:
    """Polynomial-time certificate check; invalid paths give False rather than raising."""
    try:
        result = check_path(dag, path)
    except DagReduceError:
        return False
    if not result.is_path:
        return False
    if criterion is Criterion.NULL_WEIGHT:
        return result.weight_sum == 0
    if k is None:
        raise ValueError(f"criterion {criterion.value} needs k")
    if criterion is Criterion.WEIGHT_K:
        return result.weight_sum == k
    if criterion is Criterion.LENGTH_K:
        return result.length == k
    return result.length == k and is_irreducible(dag, path)


def _iter_paths(dag: WeightedDag):
    """Source-target paths in lexicographic order (iterative DFS)."""
    if dag.source == dag.target:
        return
    path = [dag.source]
    stack = [iter(dag.successors(dag.source))]
    while stack:
        nxt = next(stack[-1], None)
        if nxt is None:
            stack.pop()
            path.pop()
            continue
        if nxt == dag.target:
            yield tuple(path) + (nxt,)
            continue
        path.append(nxt)
        stack.append(iter(dag.successors(nxt)))


@dataclass(frozen=True)
class PathListing:
    paths: tuple[PathWitness, ...]
    truncated: bool


def enumerate_paths(dag: WeightedDag, cap: int = 10**6) -> PathListing:
    """All source-target paths in lexicographic order, at most ``cap`` of them."""
    found: list[PathWitness] = []
    for p in _iter_paths(dag):
        if len(found) == cap:
            return PathListing(tuple(found), True)
        found.append(PathWitness(p))
    return PathListing(tuple(found), False)
