"""Polynomial-time reductions into the path problems, and witness maps both ways.

SUBSET SUM instances become linear orders on ``n + 2`` vertices: the source
is 0, element ``a_j`` sits on vertex ``j`` and the target is ``n + 1``. Every
arc into vertex ``j <= n`` carries ``a_j``; arcs from an element vertex into
the target carry 0 and the direct source-target arc carries +1, so the only
path that selects no element can never look like a zero-sum solution.

CNF formulas become layered DAGs with one vertex per literal occurrence
(clause by clause), whose induced source-target paths of length ``k + 1`` are
exactly the consistent choices of one literal per clause.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import (
    ContradictoryLiteralsError,
    DirectArcPathError,
    EmptyFormulaError,
    IndexOutOfRangeError,
    InputTooLargeError,
    NotAPathError,
    UnsatisfiedError,
    WrongLengthError,
)
from .graph import INT64_MAX, PathWitness, WeightedDag, check_path
from .instances import Assignment, CnfFormula, Literal, SubsetSumInstance, SubsetWitness


@dataclass(frozen=True)
class KPathInstance:
    dag: WeightedDag
    k: int
    p: int


@dataclass(frozen=True)
class IrrPathInstance:
    dag: WeightedDag
    k: int
    # vertex id -> (1-based clause index, literal)
    literal_map: Mapping[int, tuple[int, Literal]] = field(compare=False)

    def clause_vertices(self, clause: int) -> list[int]:
        return sorted(v for v, (ci, _) in self.literal_map.items() if ci == clause)


# -- SUBSET SUM -> null weighted path / K weighted path ----------------------


def _linear_order_arcs(instance: SubsetSumInstance, shift: int) -> list[tuple[int, int, int]]:
    n = instance.n
    t = n + 1
    arcs = []
    for i in range(t):
        for j in range(i + 1, t + 1):
            if j <= n:
                base = instance.elements[j - 1]
            elif i == 0:
                base = 1
            else:
                base = 0
            arcs.append((i, j, (j - i) * shift + base))
    return arcs


def reduce_ss_to_nullpath(instance: SubsetSumInstance) -> WeightedDag:
    """Linear order whose zero-weight s-t paths are the zero-sum subsets."""
    n = instance.n
    return WeightedDag(n + 2, _linear_order_arcs(instance, 0), 0, n + 1)


def translation_offset(instance: SubsetSumInstance) -> int:
    """``P = -min({0} | A)``, the smallest shift making every arc weight non-negative."""
    return -min((0, *instance.elements))


def reduce_ss_to_kpath(instance: SubsetSumInstance) -> KPathInstance:
    """Same linear order with arc ``(i, j)`` shifted by ``(j - i) * P``.

    The shifts telescope to ``(n + 1) * P`` along any s-t path, so the target
    weight is ``K = (n + 1) * P``.
    """
    n = instance.n
    p = translation_offset(instance)
    k = (n + 1) * p
    biggest = max((abs(a) for a in instance.elements), default=0)
    if k + biggest + 1 > INT64_MAX:
        raise InputTooLargeError(f"K = {k} plus element magnitude {biggest} overflows 64 bits")
    dag = WeightedDag(n + 2, _linear_order_arcs(instance, p), 0, n + 1)
    return KPathInstance(dag, k, p)


def extract_subset(path: PathWitness | Sequence[int], instance: SubsetSumInstance) -> SubsetWitness:
    """Intermediate vertices of an s-t path in either SUBSET SUM reduction."""
    vertices = tuple(path)
    t = instance.n + 1
    if (
        len(vertices) < 2
        or vertices[0] != 0
        or vertices[-1] != t
        or any(a >= b for a, b in zip(vertices, vertices[1:]))
    ):
        raise NotAPathError(f"{list(vertices)} is not a 0-{t} path of the reduced linear order")
    if len(vertices) == 2:
        raise DirectArcPathError("the direct source-target arc selects no element")
    return SubsetWitness(vertices[1:-1])


def lift_subset(witness: SubsetWitness, instance: SubsetSumInstance) -> PathWitness:
    idx = witness.indices
    if not idx:
        raise IndexOutOfRangeError("an empty subset has no path")
    if any(a >= b for a, b in zip(idx, idx[1:])):
        raise IndexOutOfRangeError(f"indices {list(idx)} are not strictly increasing")
    if idx[0] < 1 or idx[-1] > instance.n:
        raise IndexOutOfRangeError(f"indices {list(idx)} leave 1..{instance.n}")
    return PathWitness((0, *idx, instance.n + 1))


# -- CNF-SAT -> irreducible path of length K -----------------------------------


def reduce_sat_to_irrpath(formula: CnfFormula) -> IrrPathInstance:
    """Layered literal DAG; satisfiable iff an induced s-t path of ``k + 1`` arcs exists.

    Arcs join literals of consecutive clauses unless they are complementary,
    and join complementary literals of clauses further apart, so an induced
    path can never pick both ``x`` and ``not x``.
    """
    k = formula.num_clauses
    if k == 0:
        raise EmptyFormulaError("a formula without clauses has no layered encoding")
    literal_map: dict[int, tuple[int, Literal]] = {}
    layers: list[list[tuple[int, Literal]]] = []
    next_id = 1
    for ci, clause in enumerate(formula.clauses, start=1):
        layer = []
        for lit in clause:
            literal_map[next_id] = (ci, lit)
            layer.append((next_id, lit))
            next_id += 1
        layers.append(layer)
    s, t = 0, next_id

    arcs: list[tuple[int, int, int]] = [(s, x, 0) for x, _ in layers[0]]
    arcs += [(y, t, 0) for y, _ in layers[-1]]
    for i, layer in enumerate(layers):
        for x, lx in layer:
            comp = lx.complement()
            for y, ly in layers[i + 1] if i + 1 < k else ():
                if ly != comp:
                    arcs.append((x, y, 0))
            for later in layers[i + 2 :]:
                for y, ly in later:
                    if ly == comp:
                        arcs.append((x, y, 0))
    dag = WeightedDag(next_id + 1, arcs, s, t)
    return IrrPathInstance(dag, k + 1, literal_map)


def extract_assignment(
    path: PathWitness | Sequence[int], inst: IrrPathInstance, formula: CnfFormula
) -> Assignment:
    """Make every literal on the path true; unmentioned variables default to False."""
    vertices = tuple(path)
    if len(vertices) - 1 != inst.k:
        raise WrongLengthError(f"path has {len(vertices) - 1} arcs, expected {inst.k}")
    if not check_path(inst.dag, vertices).is_path:
        raise NotAPathError(f"{list(vertices)} is not a source-target path")
    values = {v: False for v in range(1, formula.num_vars + 1)}
    fixed: dict[int, bool] = {}
    for v in vertices[1:-1]:
        _, lit = inst.literal_map[v]
        want = not lit.negated
        if fixed.setdefault(lit.variable, want) != want:
            raise ContradictoryLiteralsError(f"path carries both polarities of x{lit.variable}")
    values.update(fixed)
    return Assignment(values)


def lift_assignment(
    assignment: Assignment, inst: IrrPathInstance, formula: CnfFormula
) -> PathWitness:
    """Pick the first true literal of each clause."""
    path = [inst.dag.source]
    for ci in range(1, formula.num_clauses + 1):
        pick = next(
            (v for v in inst.clause_vertices(ci) if assignment.satisfies(inst.literal_map[v][1])),
            None,
        )
        if pick is None:
            raise UnsatisfiedError(f"clause {ci} has no true literal")
        path.append(pick)
    path.append(inst.dag.target)
    return PathWitness(path)
