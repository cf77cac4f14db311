"""The AFP learner and its refine-all variant, with an event trace.

Each run keeps a list ``O`` of negative examples used as antecedents and a set
``P`` of positive counterexamples.  After every counterexample the hypothesis
is rebuilt from ``O`` and ``P``.  With ``Policy.FIRST`` a negative
counterexample refines only the first eligible member of ``O``; ``Policy.ALL``
refines every eligible member.
"""

from __future__ import annotations

import enum
import hashlib
import time
from dataclasses import dataclass, field
from typing import ClassVar, Union

from .core import (
    Clause,
    Consequent,
    HornFormula,
    evaluate,
    full_set,
    is_proper_subset,
    is_subset,
)
from .teachers import Teacher


class Policy(enum.Enum):
    FIRST = "first-only"
    ALL = "all"


class LoopLimitExceeded(RuntimeError):
    pass


class InvariantViolation(AssertionError):
    pass


def formula_hash(h: HornFormula) -> str:
    text = ";".join(f"{a:x}>{b:x}{'F' if f else ''}" for a, b, f in h.sorted_key())
    return hashlib.sha256(f"{h.n}|{text}".encode()).hexdigest()[:16]


# Trace events.  ``kind`` is the tag written to JSON traces.

@dataclass(frozen=True)
class EqualQuery:
    kind: ClassVar[str] = "equal"
    h_hash: str


@dataclass(frozen=True)
class CounterexampleReceived:
    kind: ClassVar[str] = "counterexample"
    x: int
    positive: bool


@dataclass(frozen=True)
class MemberQuery:
    kind: ClassVar[str] = "member"
    x: int
    answer: bool


@dataclass(frozen=True)
class Refine:
    kind: ClassVar[str] = "refine"
    pos: int
    old: int
    new: int


@dataclass(frozen=True)
class Append:
    kind: ClassVar[str] = "append"
    x: int


@dataclass(frozen=True)
class PositiveAdd:
    kind: ClassVar[str] = "positive"
    x: int


@dataclass(frozen=True)
class Rebuild:
    kind: ClassVar[str] = "rebuild"
    h_hash: str


@dataclass(frozen=True)
class Done:
    kind: ClassVar[str] = "done"
    h_hash: str
    formula: HornFormula = field(compare=False)


TraceEvent = Union[EqualQuery, CounterexampleReceived, MemberQuery, Refine, Append, PositiveAdd, Rebuild, Done]


@dataclass
class RunStats:
    eq_queries: int = 0
    member_queries: int = 0
    pos_ces: int = 0
    neg_ces: int = 0
    refinements: int = 0
    appends: int = 0
    iterations: int = 0
    wall_ns: int = 0

    def counts(self) -> tuple[int, ...]:
        """Everything except wall time."""
        return (self.eq_queries, self.member_queries, self.pos_ces, self.neg_ces,
                self.refinements, self.appends, self.iterations)


def stats_from_trace(trace: list[TraceEvent]) -> RunStats:
    stats = RunStats()
    for ev in trace:
        if isinstance(ev, EqualQuery):
            stats.eq_queries += 1
        elif isinstance(ev, MemberQuery):
            stats.member_queries += 1
        elif isinstance(ev, CounterexampleReceived):
            stats.iterations += 1
            if ev.positive:
                stats.pos_ces += 1
            else:
                stats.neg_ces += 1
        elif isinstance(ev, Refine):
            stats.refinements += 1
        elif isinstance(ev, Append):
            stats.appends += 1
    return stats


@dataclass
class LearnerState:
    n: int
    O: list[int] = field(default_factory=list)
    P: list[int] = field(default_factory=list)
    H: HornFormula = None  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.H is None:
            self.H = HornFormula(self.n)


@dataclass
class RunConfig:
    max_iterations: int | None = None
    # upper bound on target clause count, used only for the default loop limit
    clause_bound: int | None = None
    # issue the membership query before the subset test, as the original pseudocode does
    membership_first: bool = False
    # canonical target; when set, O is checked after every rebuild
    check_against: HornFormula | None = None

    def iteration_limit(self, n: int) -> int:
        if self.max_iterations is not None:
            return self.max_iterations
        m = self.clause_bound if self.clause_bound is not None else n + 1
        return 4 * (m + 1) * (n + 2) ** 2


@dataclass
class RunResult:
    hypothesis: HornFormula
    trace: list[TraceEvent]
    stats: RunStats


def rebuild_hypothesis(O: list[int], P: list[int], n: int) -> HornFormula:
    """One clause per member of ``O``: ``s`` implies every variable that all
    positive examples containing ``s`` agree on, or False when none contain it."""
    sigma = full_set(n)
    clauses = []
    for s in O:
        meet = sigma
        covered = False
        for z in P:
            if is_subset(s, z):
                meet &= z
                covered = True
        if covered:
            clauses.append(Clause(s, Consequent(s | meet)))
        else:
            clauses.append(Clause(s, Consequent(sigma, True)))
    return HornFormula(n, tuple(clauses))


def scan_and_refine(
    state: LearnerState,
    y: int,
    policy: Policy,
    teacher: Teacher,
    membership_first: bool = False,
) -> list[TraceEvent]:
    events: list[TraceEvent] = []
    refined = False
    for pos, s in enumerate(state.O):
        meet = s & y
        if membership_first:
            answer = teacher.member(meet)
            events.append(MemberQuery(meet, answer))
            if answer or not is_proper_subset(meet, s):
                continue
        else:
            if not is_proper_subset(meet, s):
                continue
            answer = teacher.member(meet)
            events.append(MemberQuery(meet, answer))
            if answer:
                continue
        state.O[pos] = meet
        events.append(Refine(pos, s, meet))
        refined = True
        if policy is Policy.FIRST:
            break
    if not refined:
        state.O.append(y)
        events.append(Append(y))
    return events


def run(teacher: Teacher, policy: Policy = Policy.FIRST, config: RunConfig | None = None) -> RunResult:
    config = config or RunConfig()
    n = teacher.n
    limit = config.iteration_limit(n)
    state = LearnerState(n)
    trace: list[TraceEvent] = []
    iterations = 0
    start = time.perf_counter_ns()
    while True:
        trace.append(EqualQuery(formula_hash(state.H)))
        ce = teacher.equal(state.H)
        if ce is None:
            break
        iterations += 1
        if iterations > limit:
            raise LoopLimitExceeded(f"no convergence after {limit} counterexamples")
        y = ce.x
        positive = not evaluate(state.H, y)
        trace.append(CounterexampleReceived(y, positive))
        if positive:
            state.P.append(y)
            trace.append(PositiveAdd(y))
        else:
            trace.extend(scan_and_refine(state, y, policy, teacher, config.membership_first))
        state.H = rebuild_hypothesis(state.O, state.P, n)
        trace.append(Rebuild(formula_hash(state.H)))
        if config.check_against is not None:
            problems = check_o(state.O, config.check_against)
            if problems:
                raise InvariantViolation("; ".join(problems))
    trace.append(Done(formula_hash(state.H), state.H))
    stats = stats_from_trace(trace)
    stats.wall_ns = time.perf_counter_ns() - start
    return RunResult(state.H, trace, stats)


# Invariant checking against a known canonical target.

@dataclass(frozen=True)
class Violation:
    name: str
    event_index: int
    detail: str


def property_of_o_failures(O: list[int], canonical: HornFormula) -> list[int]:
    """Positions ``i`` with no target clause that ``O[i]`` violates and no earlier member does."""
    failing = []
    for i, s in enumerate(O):
        witnessed = any(
            not c.satisfied_by(s) and all(c.satisfied_by(O[j]) for j in range(i))
            for c in canonical.clauses
        )
        if not witnessed:
            failing.append(i)
    return failing


def check_o(O: list[int], canonical: HornFormula) -> list[str]:
    problems = [f"property-of-O fails at position {i}" for i in property_of_o_failures(O, canonical)]
    if len(O) > len(canonical):
        problems.append(f"|O| = {len(O)} exceeds m = {len(canonical)}")
    return problems


def verify_run_invariants(trace: list[TraceEvent], canonical: HornFormula) -> list[Violation]:
    """Replay a trace and report every invariant it breaks.

    Checked after each rebuild: every member of ``O`` has its own witness
    clause, ``|O|`` is at most the clause count, and every member of ``O`` is
    a non-model.  At the end: the teacher may only say yes once every
    canonical antecedent is in ``O``.  Refinements must shrink by intersection.
    """
    violations: list[Violation] = []
    O: list[int] = []
    y = None
    m = len(canonical)
    antecedents = [c.antecedent for c in canonical.clauses]
    for idx, ev in enumerate(trace):
        if isinstance(ev, CounterexampleReceived):
            y = ev.x
        elif isinstance(ev, Append):
            O.append(ev.x)
        elif isinstance(ev, Refine):
            if ev.pos >= len(O) or O[ev.pos] != ev.old:
                violations.append(Violation("refine-shape", idx, f"position {ev.pos} does not hold the old set"))
            elif y is None or ev.new != ev.old & y or not is_proper_subset(ev.new, ev.old):
                violations.append(Violation("refine-shape", idx, "new set is not a proper intersection with y"))
            if ev.pos < len(O):
                O[ev.pos] = ev.new
        elif isinstance(ev, Rebuild):
            for i in property_of_o_failures(O, canonical):
                violations.append(Violation("property-of-O", idx, f"O[{i}] has no clause of its own"))
            if len(O) > m:
                violations.append(Violation("O-size", idx, f"|O| = {len(O)} > m = {m}"))
            for i, s in enumerate(O):
                if evaluate(canonical, s):
                    violations.append(Violation("O-negative", idx, f"O[{i}] is a model of the target"))
        elif isinstance(ev, Done):
            missing = [a for a in antecedents if a not in O]
            if missing:
                violations.append(Violation(
                    "negative-counterexample", idx,
                    f"teacher said yes with {len(missing)} target antecedents missing from O"))
    return violations
