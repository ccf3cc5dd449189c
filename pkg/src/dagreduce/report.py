"""Records produced by verification campaigns."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class TrialRecord:
    index: int
    digest: str
    oracle_answer: bool
    solver_answer: bool
    agree: bool
    # check name -> passed; which checks run depends on the campaign kind
    witness_checks: dict[str, bool] = field(default_factory=dict)
    elapsed: float = field(default=0.0, compare=False)
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.agree and all(self.witness_checks.values())


@dataclass(frozen=True)
class VerificationReport:
    kind: str
    seed: int
    records: tuple[TrialRecord, ...]

    @property
    def trials(self) -> int:
        return len(self.records)

    @property
    def agreements(self) -> int:
        return sum(r.ok for r in self.records)

    @property
    def failures(self) -> list[int]:
        return [r.index for r in self.records if not r.ok]

    @property
    def all_agree(self) -> bool:
        return not self.failures
