"""Text formats: SUBSET SUM, DIMACS CNF, weighted DAG, witness JSON and report JSONL.

The three instance formats share DIMACS framing: lines whose first
non-blank character is ``c`` are comments and a single ``p <kind> ...`` line
opens the body. Every parse error carries a 1-based line and column.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Any, Iterator, Union

from .errors import (
    CountMismatchError,
    CyclicGraphError,
    DuplicateVariableInClauseError,
    FormatSyntaxError,
    HeaderMismatchError,
    ParsedCyclicGraphError,
    ParsedDuplicateArcError,
    ParsedSelfLoopError,
)
from .graph import INT64_MAX, WeightedDag, check_path
from .instances import CnfFormula, Literal, SubsetSumInstance
from .report import TrialRecord, VerificationReport
from .solvers import SolveOutcome

_INT = re.compile(r"[+-]?[0-9]+\Z")
_TOKEN = re.compile(r"\S+")


@dataclass(frozen=True)
class Token:
    text: str
    line: int
    column: int

    def integer(self) -> int:
        if not _INT.match(self.text):
            raise FormatSyntaxError(f"expected an integer, found {self.text!r}", self.line, self.column)
        value = int(self.text)
        if not -INT64_MAX - 1 <= value <= INT64_MAX:
            raise FormatSyntaxError(f"{self.text} does not fit in 64 bits", self.line, self.column)
        return value


def _tokenize(text: str, *, stop_at_percent: bool = False) -> Iterator[list[Token]]:
    """Yield the non-comment, non-blank lines as token lists."""
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.lstrip()
        if not stripped or stripped.startswith("c"):
            continue
        if stop_at_percent and stripped.startswith("%"):
            return
        yield [Token(m.group(), lineno, m.start() + 1) for m in _TOKEN.finditer(line)]


def _header(lines: Iterator[list[Token]], kind: str, nfields: int) -> tuple[Token, list[int]]:
    first = next(lines, None)
    if first is None:
        raise FormatSyntaxError(f"missing 'p {kind}' header", 1, 1)
    if first[0].text != "p" or len(first) < 2 or first[1].text != kind:
        raise FormatSyntaxError(f"expected 'p {kind}' header", first[0].line, first[0].column)
    if len(first) != 2 + nfields:
        raise FormatSyntaxError(
            f"'p {kind}' header takes {nfields} fields, found {len(first) - 2}",
            first[0].line,
            first[0].column,
        )
    values = [tok.integer() for tok in first[2:]]
    for tok, value in zip(first[2:], values):
        if value < 0:
            raise FormatSyntaxError(f"header field must be non-negative, got {value}", tok.line, tok.column)
    return first[0], values


def _end_position(text: str) -> tuple[int, int]:
    lines = text.splitlines() or [""]
    return len(lines), len(lines[-1]) + 1


# -- SUBSET SUM ----------------------------------------------------------------


def parse_subsetsum(text: str) -> SubsetSumInstance:
    lines = _tokenize(text)
    _, (n,) = _header(lines, "ss", 1)
    values: list[int] = []
    for toks in lines:
        for tok in toks:
            if len(values) == n:
                raise CountMismatchError(f"more than the declared {n} integers", tok.line, tok.column)
            values.append(tok.integer())
    if len(values) != n:
        raise CountMismatchError(f"expected {n} integers, found {len(values)}", *_end_position(text))
    return SubsetSumInstance(values)


def serialize_subsetsum(instance: SubsetSumInstance) -> str:
    body = " ".join(str(a) for a in instance.elements)
    return f"p ss {instance.n}\n" + (body + "\n" if body else "")


# -- DIMACS CNF ----------------------------------------------------------------


def parse_cnf(text: str) -> CnfFormula:
    """DIMACS CNF. A trailing clause without its ``0`` terminator is accepted."""
    lines = _tokenize(text, stop_at_percent=True)
    header, (num_vars, num_clauses) = _header(lines, "cnf", 2)
    clauses: list[list[Literal]] = []
    current: list[Literal] = []
    seen: set[int] = set()
    last: Token = header
    for toks in lines:
        for tok in toks:
            last = tok
            code = tok.integer()
            if code == 0:
                clauses.append(current)
                current, seen = [], set()
                continue
            lit = Literal.from_dimacs(code)
            if lit.variable > num_vars:
                raise HeaderMismatchError(
                    f"variable {lit.variable} exceeds the declared {num_vars}", tok.line, tok.column
                )
            if lit.variable in seen:
                raise DuplicateVariableInClauseError(
                    f"variable {lit.variable} occurs twice in one clause", tok.line, tok.column
                )
            seen.add(lit.variable)
            current.append(lit)
    if current:
        clauses.append(current)
    if len(clauses) != num_clauses:
        raise HeaderMismatchError(
            f"header declares {num_clauses} clauses, found {len(clauses)}", last.line, last.column
        )
    return CnfFormula(num_vars, clauses)


def serialize_cnf(formula: CnfFormula) -> str:
    out = [f"p cnf {formula.num_vars} {formula.num_clauses}"]
    for clause in formula.clauses:
        out.append(" ".join([*(str(lit.to_dimacs()) for lit in clause), "0"]))
    return "\n".join(out) + "\n"


# -- weighted DAG ----------------------------------------------------------------


def parse_dag(text: str) -> WeightedDag:
    """``p dag <V> <A> <s> <t>`` then one ``<tail> <head> <weight>`` line per arc."""
    lines = _tokenize(text)
    header, (nv, na, s, t) = _header(lines, "dag", 4)
    for value, name in ((s, "source"), (t, "target")):
        if not value < nv:
            raise FormatSyntaxError(f"{name} {value} is not a vertex of 0..{nv - 1}", header.line, header.column)
    arcs: list[tuple[int, int, int]] = []
    where: dict[tuple[int, int], Token] = {}
    for toks in lines:
        if len(arcs) == na:
            raise CountMismatchError(f"more than the declared {na} arcs", toks[0].line, toks[0].column)
        if len(toks) != 3:
            raise FormatSyntaxError(
                f"arc line needs 'tail head weight', found {len(toks)} fields", toks[0].line, toks[0].column
            )
        tail, head, weight = (tok.integer() for tok in toks)
        for tok, v in zip(toks, (tail, head)):
            if not 0 <= v < nv:
                raise FormatSyntaxError(f"vertex {v} is not in 0..{nv - 1}", tok.line, tok.column)
        if tail == head:
            raise ParsedSelfLoopError(f"self-loop on vertex {tail}", toks[0].line, toks[0].column)
        if (tail, head) in where:
            first = where[(tail, head)]
            raise ParsedDuplicateArcError(
                f"arc ({tail}, {head}) already given on line {first.line}", toks[0].line, toks[0].column
            )
        where[(tail, head)] = toks[0]
        arcs.append((tail, head, weight))
    if len(arcs) != na:
        raise CountMismatchError(f"expected {na} arcs, found {len(arcs)}", *_end_position(text))
    try:
        return WeightedDag(nv, arcs, s, t, allow_equal_endpoints=True)
    except CyclicGraphError as exc:
        tok = where[_arc_on_cycle(nv, arcs)]
        raise ParsedCyclicGraphError(str(exc), tok.line, tok.column) from None


def _arc_on_cycle(nv: int, arcs: list[tuple[int, int, int]]) -> tuple[int, int]:
    """First arc (in file order) lying on a directed cycle."""
    succ: dict[int, set[int]] = {v: set() for v in range(nv)}
    for u, v, _ in arcs:
        succ[u].add(v)

    def reaches(a: int, b: int) -> bool:
        stack, seen = [a], {a}
        while stack:
            x = stack.pop()
            if x == b:
                return True
            for y in succ[x] - seen:
                seen.add(y)
                stack.append(y)
        return False

    return next((u, v) for u, v, _ in arcs if reaches(v, u))


def serialize_dag(dag: WeightedDag) -> str:
    out = [f"p dag {dag.num_vertices} {dag.num_arcs} {dag.source} {dag.target}"]
    out += [f"{u} {v} {w}" for u, v, w in dag.arcs]
    return "\n".join(out) + "\n"


# -- witness JSON ----------------------------------------------------------------

WITNESS_KEYS = ("problem", "answer", "k", "witness", "weight_sum", "length", "stats")


@dataclass(frozen=True)
class WitnessDocument:
    problem: str
    answer: bool
    k: int | None
    witness: tuple[int, ...] | None
    weight_sum: int | None
    length: int | None
    states_explored: int


def witness_document(
    outcome: SolveOutcome, problem: str, dag: WeightedDag, k: int | None = None
) -> WitnessDocument:
    if outcome.witness is None:
        return WitnessDocument(problem, False, k, None, None, None, outcome.stats.states_explored)
    checked = check_path(dag, outcome.witness)
    return WitnessDocument(
        problem,
        True,
        k,
        outcome.witness.vertices,
        checked.weight_sum,
        checked.length,
        outcome.stats.states_explored,
    )


def serialize_witness(doc: WitnessDocument) -> str:
    # elapsed time is left out so the output is byte-for-byte reproducible
    obj: dict[str, Any] = {"problem": doc.problem, "answer": "yes" if doc.answer else "no"}
    if doc.k is not None:
        obj["k"] = doc.k
    obj["witness"] = list(doc.witness) if doc.witness is not None else None
    obj["weight_sum"] = doc.weight_sum
    obj["length"] = doc.length
    obj["stats"] = {"states_explored": doc.states_explored}
    return json.dumps(obj, separators=(",", ":")) + "\n"


def emit_witness(outcome: SolveOutcome, problem: str, dag: WeightedDag, k: int | None = None) -> str:
    return serialize_witness(witness_document(outcome, problem, dag, k))


def _load_json(text: str, line_offset: int = 0) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatSyntaxError(exc.msg, exc.lineno + line_offset, exc.colno) from None


def parse_witness(text: str) -> WitnessDocument:
    obj = _load_json(text)
    if not isinstance(obj, dict):
        raise FormatSyntaxError("witness document must be a JSON object", 1, 1)
    expected = [key for key in WITNESS_KEYS if key != "k" or "k" in obj]
    if list(obj) != expected:
        raise FormatSyntaxError(f"witness keys must be {expected}, found {list(obj)}", 1, 1)
    if obj["answer"] not in ("yes", "no"):
        raise FormatSyntaxError(f"answer must be 'yes' or 'no', found {obj['answer']!r}", 1, 1)
    stats = obj["stats"]
    if not isinstance(stats, dict) or list(stats) != ["states_explored"]:
        raise FormatSyntaxError("stats must hold exactly 'states_explored'", 1, 1)
    witness = obj["witness"]
    return WitnessDocument(
        problem=obj["problem"],
        answer=obj["answer"] == "yes",
        k=obj.get("k"),
        witness=tuple(witness) if witness is not None else None,
        weight_sum=obj["weight_sum"],
        length=obj["length"],
        states_explored=stats["states_explored"],
    )


# -- verification report (JSON lines) ---------------------------------------------


def _dump(obj: dict[str, Any]) -> str:
    return json.dumps(obj, separators=(",", ":"))


def serialize_report(report: VerificationReport) -> str:
    out = []
    for r in report.records:
        out.append(
            _dump(
                {
                    "type": "trial",
                    "index": r.index,
                    "digest": r.digest,
                    "oracle": r.oracle_answer,
                    "solver": r.solver_answer,
                    "agree": r.agree,
                    "witness_checks": dict(r.witness_checks),
                    "elapsed": r.elapsed,
                    "note": r.note,
                }
            )
        )
    out.append(
        _dump(
            {
                "type": "summary",
                "kind": report.kind,
                "seed": report.seed,
                "trials": report.trials,
                "agreements": report.agreements,
                "failures": report.failures,
            }
        )
    )
    return "\n".join(out) + "\n"


def parse_report(text: str) -> VerificationReport:
    records: list[TrialRecord] = []
    summary: dict[str, Any] | None = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        if summary is not None:
            raise FormatSyntaxError("content after the summary line", lineno, 1)
        obj = _load_json(line, lineno - 1)
        kind = obj.get("type") if isinstance(obj, dict) else None
        if kind == "trial":
            try:
                records.append(
                    TrialRecord(
                        index=obj["index"],
                        digest=obj["digest"],
                        oracle_answer=obj["oracle"],
                        solver_answer=obj["solver"],
                        agree=obj["agree"],
                        witness_checks=dict(obj["witness_checks"]),
                        elapsed=obj["elapsed"],
                        note=obj["note"],
                    )
                )
            except KeyError as exc:
                raise FormatSyntaxError(f"trial record lacks {exc.args[0]!r}", lineno, 1) from None
        elif kind == "summary":
            summary = obj
        else:
            raise FormatSyntaxError("each line must be a trial or summary object", lineno, 1)
    if summary is None:
        raise FormatSyntaxError("missing summary line", *_end_position(text))
    report = VerificationReport(summary["kind"], summary["seed"], tuple(records))
    if (summary["trials"], summary["agreements"], summary["failures"]) != (
        report.trials,
        report.agreements,
        report.failures,
    ):
        raise CountMismatchError("summary disagrees with the trial records", *_end_position(text))
    return report


# -- generic documents --------------------------------------------------------------

Payload = Union[SubsetSumInstance, CnfFormula, WeightedDag, WitnessDocument, VerificationReport]

_PARSERS = {
    "subsetsum": parse_subsetsum,
    "cnf": parse_cnf,
    "dag": parse_dag,
    "witness": parse_witness,
    "report": parse_report,
}
_SERIALIZERS = {
    SubsetSumInstance: ("subsetsum", serialize_subsetsum),
    CnfFormula: ("cnf", serialize_cnf),
    WeightedDag: ("dag", serialize_dag),
    WitnessDocument: ("witness", serialize_witness),
    VerificationReport: ("report", serialize_report),
}


@dataclass(frozen=True)
class Document:
    kind: str
    payload: Payload

    @classmethod
    def of(cls, payload: Payload) -> Document:
        return cls(_SERIALIZERS[type(payload)][0], payload)


def detect_kind(text: str) -> str:
    for toks in _tokenize(text):
        head = toks[0].text
        if head == "p" and len(toks) > 1:
            kind = {"ss": "subsetsum", "cnf": "cnf", "dag": "dag"}.get(toks[1].text)
            if kind:
                return kind
        if head.startswith("{"):
            return "report" if '"type"' in head.split(",", 1)[0] else "witness"
        raise FormatSyntaxError(f"cannot tell the document kind from {head!r}", toks[0].line, toks[0].column)
    raise FormatSyntaxError("empty document", 1, 1)


def parse_document(text: str, kind: str | None = None) -> Document:
    kind = kind or detect_kind(text)
    if kind not in _PARSERS:
        raise ValueError(f"unknown document kind {kind!r}")
    return Document(kind, _PARSERS[kind](text))


def serialize_document(doc: Document) -> str:
    return _SERIALIZERS[type(doc.payload)][1](doc.payload)
