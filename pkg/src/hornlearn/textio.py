"""Formula files, script files, JSON traces and CSV stats."""

from __future__ import annotations

import csv
import json
import os
import re
from dataclasses import dataclass, fields

from .adversary import Script, ScriptEntry
from .core import MAX_VARS, Clause, Consequent, HornFormula, format_vars, from_bits, full_set, to_bits
from .learner import (
    Append,
    CounterexampleReceived,
    Done,
    EqualQuery,
    MemberQuery,
    PositiveAdd,
    Rebuild,
    Refine,
    RunStats,
    TraceEvent,
)


class ParseError(ValueError):
    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


_VAR = re.compile(r"x(\d+)\Z")
_TOKEN = re.compile(r"\S+")


def _content(raw: str) -> str:
    return raw.split("#", 1)[0]


def _varlist(tokens: list[tuple[int, str]], n: int, lineno: int) -> int:
    if len(tokens) == 1 and tokens[0][1] == "T":
        return 0
    if not tokens:
        raise ParseError(lineno, 1, "empty side of clause")
    mask = 0
    for col, tok in tokens:
        m = _VAR.match(tok)
        if not m:
            raise ParseError(lineno, col, f"unexpected token {tok!r}")
        idx = int(m.group(1))
        if idx >= n:
            raise ParseError(lineno, col, f"{tok} is beyond the declared {n} variables")
        mask |= 1 << idx
    return mask


def parse_formula(text: str) -> HornFormula:
    n = None
    clauses = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _content(raw)
        tokens = [(m.start() + 1, m.group()) for m in _TOKEN.finditer(line)]
        if not tokens:
            continue
        if n is None:
            if len(tokens) != 2 or tokens[0][1] != "vars" or not tokens[1][1].isdigit():
                raise ParseError(lineno, tokens[0][0], "expected header 'vars <n>'")
            n = int(tokens[1][1])
            if n > MAX_VARS:
                raise ParseError(lineno, tokens[1][0], f"at most {MAX_VARS} variables are supported")
            continue
        arrows = [i for i, (_, t) in enumerate(tokens) if t == "->"]
        if len(arrows) != 1:
            raise ParseError(lineno, tokens[0][0], "expected exactly one '->'")
        k = arrows[0]
        antecedent = _varlist(tokens[:k], n, lineno)
        rhs = tokens[k + 1:]
        if len(rhs) == 1 and rhs[0][1] == "F":
            consequent = Consequent(full_set(n), True)
        else:
            consequent = Consequent(_varlist(rhs, n, lineno))
        clauses.append(Clause(antecedent, consequent))
    if n is None:
        raise ParseError(1, 1, "missing header 'vars <n>'")
    return HornFormula(n, tuple(clauses))


def format_clause(c: Clause) -> str:
    lhs = format_vars(c.antecedent) or "T"
    if c.contradictory:
        rhs = "F"
    else:
        rhs = format_vars(c.consequent.vars) or "T"
    return f"{lhs} -> {rhs}"


def format_formula(f: HornFormula) -> str:
    return "".join([f"vars {f.n}\n"] + [format_clause(c) + "\n" for c in f.clauses])


def parse_script(text: str, n: int) -> Script:
    script: Script = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _content(raw).strip()
        if not line:
            continue
        positive = None
        if line[0] in "+-":
            positive = line[0] == "+"
            line = line[1:].strip()
        if len(line) != n or set(line) - {"0", "1"}:
            raise ParseError(lineno, 1, f"expected a {n}-character bitstring, got {line!r}")
        script.append(ScriptEntry(from_bits(line), positive))
    return script


def format_script(script: Script, n: int) -> str:
    out = []
    for e in script:
        sign = "" if e.positive is None else ("+" if e.positive else "-")
        out.append(f"{sign}{to_bits(e.x, n)}\n")
    return "".join(out)


def event_to_json(ev: TraceEvent, n: int) -> dict:
    d: dict = {"type": ev.kind}
    if isinstance(ev, (EqualQuery, Rebuild)):
        d["h_hash"] = ev.h_hash
    elif isinstance(ev, CounterexampleReceived):
        d["x"] = to_bits(ev.x, n)
        d["sign"] = "+" if ev.positive else "-"
    elif isinstance(ev, MemberQuery):
        d["x"] = to_bits(ev.x, n)
        d["answer"] = "yes" if ev.answer else "no"
    elif isinstance(ev, Refine):
        d.update(pos=ev.pos, old=to_bits(ev.old, n), new=to_bits(ev.new, n))
    elif isinstance(ev, (Append, PositiveAdd)):
        d["x"] = to_bits(ev.x, n)
    elif isinstance(ev, Done):
        d["h_hash"] = ev.h_hash
        d["n"] = ev.formula.n
        d["formula"] = [format_clause(c) for c in ev.formula.clauses]
    return d


def event_from_json(d: dict) -> TraceEvent:
    kind = d["type"]
    if kind == "equal":
        return EqualQuery(d["h_hash"])
    if kind == "rebuild":
        return Rebuild(d["h_hash"])
    if kind == "counterexample":
        return CounterexampleReceived(from_bits(d["x"]), d["sign"] == "+")
    if kind == "member":
        return MemberQuery(from_bits(d["x"]), d["answer"] == "yes")
    if kind == "refine":
        return Refine(d["pos"], from_bits(d["old"]), from_bits(d["new"]))
    if kind == "append":
        return Append(from_bits(d["x"]))
    if kind == "positive":
        return PositiveAdd(from_bits(d["x"]))
    if kind == "done":
        body = "".join(line + "\n" for line in d["formula"])
        return Done(d["h_hash"], parse_formula(f"vars {d['n']}\n{body}"))
    raise ValueError(f"unknown trace event type {kind!r}")


def trace_lines(trace: list[TraceEvent], n: int) -> list[str]:
    """One compact JSON object per event; used for dumps and diffs."""
    return [json.dumps(event_to_json(ev, n), separators=(",", ":")) for ev in trace]


def dump_trace(trace: list[TraceEvent], n: int) -> str:
    lines = trace_lines(trace, n)
    if not lines:
        return "[]\n"
    return "[\n" + ",\n".join(lines) + "\n]\n"


def load_trace(text: str) -> list[TraceEvent]:
    return [event_from_json(d) for d in json.loads(text)]


@dataclass
class StatsRow:
    algorithm: str
    policy: str
    n: int
    m: int
    teacher: str
    eq_queries: int
    member_queries: int
    pos_ces: int
    neg_ces: int
    refinements: int
    appends: int
    wall_ns: int
    seed: int | str

    @classmethod
    def from_stats(cls, stats: RunStats, *, algorithm: str, policy: str, n: int, m: int,
                   teacher: str, seed: int | str = "") -> StatsRow:
        return cls(algorithm, policy, n, m, teacher, stats.eq_queries, stats.member_queries,
                   stats.pos_ces, stats.neg_ces, stats.refinements, stats.appends, stats.wall_ns, seed)


STATS_COLUMNS = [f.name for f in fields(StatsRow)]


def write_stats(path: str, rows: list[StatsRow], append: bool = False) -> None:
    exists = append and os.path.exists(path) and os.path.getsize(path) > 0
    with open(path, "a" if append else "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=STATS_COLUMNS)
        if not exists:
            writer.writeheader()
        for row in rows:
            writer.writerow({k: getattr(row, k) for k in STATS_COLUMNS})


def read_stats(path: str) -> list[dict[str, str]]:
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))
