"""Source-problem instances (SUBSET SUM, CNF) and their witnesses."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple

from .errors import DuplicateVariableInClauseError, IndexOutOfRangeError


@dataclass(frozen=True)
class SubsetSumInstance:
    """Ordered integers ``a_1 .. a_n``; duplicates are allowed.

    A solution is a non-empty set of *indices* whose elements sum to zero.
    """

    elements: tuple[int, ...]

    def __init__(self, elements: Iterable[int]):
        object.__setattr__(self, "elements", tuple(int(a) for a in elements))

    @property
    def n(self) -> int:
        return len(self.elements)

    def value(self, index: int) -> int:
        """Element at 1-based ``index``."""
        if not 1 <= index <= self.n:
            raise IndexOutOfRangeError(f"index {index} outside 1..{self.n}")
        return self.elements[index - 1]


@dataclass(frozen=True)
class SubsetWitness:
    """Strictly increasing 1-based indices into a :class:`SubsetSumInstance`."""

    indices: tuple[int, ...]

    def __init__(self, indices: Iterable[int]):
        object.__setattr__(self, "indices", tuple(int(i) for i in indices))

    def total(self, instance: SubsetSumInstance) -> int:
        return sum(instance.value(i) for i in self.indices)

    def is_zero_sum(self, instance: SubsetSumInstance) -> bool:
        """True for a non-empty, strictly increasing, in-range zero-sum selection."""
        idx = self.indices
        if not idx or any(a >= b for a, b in zip(idx, idx[1:])):
            return False
        if idx[0] < 1 or idx[-1] > instance.n:
            return False
        return self.total(instance) == 0


class Literal(NamedTuple):
    variable: int
    negated: bool = False

    @classmethod
    def from_dimacs(cls, code: int) -> Literal:
        if code == 0:
            raise ValueError("0 is the DIMACS clause terminator, not a literal")
        return cls(abs(code), code < 0)

    def to_dimacs(self) -> int:
        return -self.variable if self.negated else self.variable

    def complement(self) -> Literal:
        return Literal(self.variable, not self.negated)

    def __str__(self) -> str:
        return f"-x{self.variable}" if self.negated else f"x{self.variable}"


Clause = tuple[Literal, ...]


@dataclass(frozen=True)
class CnfFormula:
    """Conjunction of clauses over variables ``1 .. num_vars``.

    Every clause mentions each variable at most once.
    """

    num_vars: int
    clauses: tuple[Clause, ...]

    def __init__(self, num_vars: int, clauses: Iterable[Iterable[Literal | int]]):
        normalized: list[Clause] = []
        for ci, clause in enumerate(clauses):
            lits = tuple(
                lit if isinstance(lit, Literal) else Literal.from_dimacs(int(lit)) for lit in clause
            )
            seen: set[int] = set()
            for lit in lits:
                if not 1 <= lit.variable <= num_vars:
                    raise ValueError(
                        f"clause {ci + 1} mentions variable {lit.variable} outside 1..{num_vars}"
                    )
                if lit.variable in seen:
                    raise DuplicateVariableInClauseError(
                        f"clause {ci + 1} repeats variable {lit.variable}"
                    )
                seen.add(lit.variable)
            normalized.append(lits)
        object.__setattr__(self, "num_vars", int(num_vars))
        object.__setattr__(self, "clauses", tuple(normalized))

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    @property
    def num_literals(self) -> int:
        return sum(len(c) for c in self.clauses)

    def is_satisfied_by(self, assignment: Assignment | Mapping[int, bool]) -> bool:
        values = assignment.values if isinstance(assignment, Assignment) else assignment
        return all(any(values[lit.variable] != lit.negated for lit in c) for c in self.clauses)


@dataclass(frozen=True)
class Assignment:
    """Total truth assignment; ``values[v]`` for every variable ``1 .. num_vars``."""

    values: Mapping[int, bool]

    def __init__(self, values: Mapping[int, bool] | Iterable[bool]):
        if isinstance(values, Mapping):
            items = {int(k): bool(v) for k, v in sorted(values.items())}
        else:
            items = {i + 1: bool(v) for i, v in enumerate(values)}
        object.__setattr__(self, "values", items)

    def __getitem__(self, variable: int) -> bool:
        return self.values[variable]

    def __hash__(self) -> int:
        return hash(tuple(self.values.items()))

    def covers(self, num_vars: int) -> bool:
        return all(v in self.values for v in range(1, num_vars + 1))

    def satisfies(self, literal: Literal) -> bool:
        return self.values[literal.variable] != literal.negated
