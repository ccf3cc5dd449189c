"""Weighted DAGs with a designated source and target.

Vertices are the integers ``0 .. num_vertices - 1``. Arcs are kept sorted by
``(tail, head)`` so two DAGs with the same arc set compare equal regardless of
the order the arcs were supplied in.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .errors import (
    CyclicGraphError,
    DuplicateArcError,
    EndpointsEqualError,
    InputTooLargeError,
    NotAPathError,
    SelfLoopError,
    UnknownVertexError,
)

INT64_MAX = 2**63 - 1

Arc = tuple[int, int, int]


class WeightedDag:
    """Immutable arc-list DAG with integer weights.

    Construction validates everything: ids in range, no self-loops, no
    duplicate pairs, acyclicity and the 64-bit path-sum budget
    ``num_vertices * max|weight| <= 2**63 - 1``.
    """

    __slots__ = ("num_vertices", "arcs", "source", "target", "_weight", "_succ", "_pred", "_topo")

    def __init__(
        self,
        num_vertices: int,
        arcs: Iterable[Sequence[int]],
        source: int,
        target: int,
        *,
        allow_equal_endpoints: bool = False,
    ):
        if num_vertices < 1:
            raise UnknownVertexError(f"a DAG needs at least one vertex, got {num_vertices}")
        for name, v in (("source", source), ("target", target)):
            if not 0 <= v < num_vertices:
                raise UnknownVertexError(f"{name} {v} out of range 0..{num_vertices - 1}")
        if source == target and not allow_equal_endpoints:
            raise EndpointsEqualError(f"source and target are both {source}")

        weight: dict[tuple[int, int], int] = {}
        for arc in arcs:
            tail, head, w = (int(x) for x in arc)
            if not (0 <= tail < num_vertices and 0 <= head < num_vertices):
                raise UnknownVertexError(f"arc ({tail}, {head}) has an endpoint out of range")
            if tail == head:
                raise SelfLoopError(f"self-loop on vertex {tail}")
            if (tail, head) in weight:
                raise DuplicateArcError(f"duplicate arc ({tail}, {head})")
            weight[(tail, head)] = w

        max_abs = max((abs(w) for w in weight.values()), default=0)
        if num_vertices * max_abs > INT64_MAX:
            raise InputTooLargeError(
                f"path sums may reach {num_vertices} * {max_abs}, beyond the signed 64-bit range"
            )

        succ: list[list[int]] = [[] for _ in range(num_vertices)]
        pred: list[list[int]] = [[] for _ in range(num_vertices)]
        for tail, head in sorted(weight):
            succ[tail].append(head)
            pred[head].append(tail)

        self.num_vertices = num_vertices
        self.source = source
        self.target = target
        self.arcs: tuple[Arc, ...] = tuple((u, v, weight[(u, v)]) for u, v in sorted(weight))
        self._weight = weight
        self._succ = tuple(tuple(s) for s in succ)
        self._pred = tuple(tuple(sorted(p)) for p in pred)
        self._topo = _kahn(num_vertices, self._succ, self._pred)

    # -- queries -----------------------------------------------------------

    def has_arc(self, tail: int, head: int) -> bool:
        return (tail, head) in self._weight

    def weight(self, tail: int, head: int) -> int:
        return self._weight[(tail, head)]

    def successors(self, v: int) -> tuple[int, ...]:
        """Heads of arcs leaving ``v``, ascending."""
        return self._succ[v]

    def predecessors(self, v: int) -> tuple[int, ...]:
        """Tails of arcs entering ``v``, ascending."""
        return self._pred[v]

    @property
    def num_arcs(self) -> int:
        return len(self.arcs)

    def with_arcs(self, arcs: Iterable[Sequence[int]]) -> WeightedDag:
        """Copy with a different arc list but the same vertices and endpoints."""
        return WeightedDag(
            self.num_vertices, arcs, self.source, self.target, allow_equal_endpoints=True
        )

    # -- value semantics ---------------------------------------------------

    def _key(self):
        return (self.num_vertices, self.source, self.target, self.arcs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedDag):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return (
            f"WeightedDag(num_vertices={self.num_vertices}, arcs={list(self.arcs)!r}, "
            f"source={self.source}, target={self.target})"
        )


def _kahn(n: int, succ: Sequence[Sequence[int]], pred: Sequence[Sequence[int]]) -> tuple[int, ...]:
    indegree = [len(p) for p in pred]
    ready = [v for v in range(n) if indegree[v] == 0]
    heapq.heapify(ready)
    order: list[int] = []
    while ready:
        v = heapq.heappop(ready)
        order.append(v)
        for w in succ[v]:
            indegree[w] -= 1
            if indegree[w] == 0:
                heapq.heappush(ready, w)
    if len(order) != n:
        stuck = min(v for v in range(n) if indegree[v] > 0)
        raise CyclicGraphError(f"arc relation has a cycle through vertex {stuck}")
    return tuple(order)


def topological_order(dag: WeightedDag) -> list[int]:
    """Deterministic topological order, smallest ready vertex id first."""
    return list(dag._topo)


@dataclass(frozen=True)
class PathWitness:
    vertices: tuple[int, ...]

    def __init__(self, vertices: Iterable[int]):
        object.__setattr__(self, "vertices", tuple(int(v) for v in vertices))

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    @property
    def length(self) -> int:
        """Number of arcs."""
        return max(len(self.vertices) - 1, 0)


@dataclass(frozen=True)
class LinearOrderCertificate:
    """``order`` is the vertex permutation when the DAG is a linear order, else None."""

    order: tuple[int, ...] | None

    def __bool__(self) -> bool:
        return self.order is not None


def is_linear_order(dag: WeightedDag) -> LinearOrderCertificate:
    # Acyclic + no duplicate pairs + n(n-1)/2 arcs forces the complete
    # transitive tournament, whose topological order is unique.
    n = dag.num_vertices
    if dag.num_arcs == n * (n - 1) // 2:
        return LinearOrderCertificate(tuple(dag._topo))
    return LinearOrderCertificate(None)


class PathCheck(NamedTuple):
    is_path: bool
    weight_sum: int | None
    length: int | None


def _as_vertices(path: PathWitness | Sequence[int]) -> tuple[int, ...]:
    return path.vertices if isinstance(path, PathWitness) else tuple(path)


def check_path(dag: WeightedDag, path: PathWitness | Sequence[int]) -> PathCheck:
    """Validate a source-to-target path and return its weight and arc count.

    ``weight_sum`` and ``length`` are None when the sequence is not a path.
    """
    vertices = _as_vertices(path)
    if not vertices:
        raise NotAPathError("empty vertex sequence")
    for v in vertices:
        if not 0 <= v < dag.num_vertices:
            raise UnknownVertexError(f"vertex {v} out of range 0..{dag.num_vertices - 1}")
    if vertices[0] != dag.source or vertices[-1] != dag.target:
        return PathCheck(False, None, None)
    total = 0
    for u, v in zip(vertices, vertices[1:]):
        w = dag._weight.get((u, v))
        if w is None:
            return PathCheck(False, None, None)
        total += w
    return PathCheck(True, total, len(vertices) - 1)


def is_irreducible(dag: WeightedDag, path: PathWitness | Sequence[int]) -> bool:
    """True iff the path's vertices induce no arcs besides the consecutive ones."""
    vertices = _as_vertices(path)
    if not check_path(dag, vertices).is_path:
        raise NotAPathError(f"{list(vertices)} is not a source-target path")
    # Backward pairs would close a cycle, so only forward chords need checking.
    for i, u in enumerate(vertices):
        for v in vertices[i + 2 :]:
            if dag.has_arc(u, v):
                return False
    return True
