"""Scripted teachers and the ``f_n`` worst-case construction.

``f_n`` lives on ``2n + 1`` variables ``x0 .. x{2n}`` and says that each of
``x0 .. x{n-1}`` implies ``x{2n}``.  Its counterexample script walks every
antecedent down from a large negative example one variable at a time, with
positive examples after each step that pin down the consequent.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .core import HornFormula, evaluate, full_set, is_proper_subset, is_subset, to_bits
from .normalize import canonical_order, is_normal_form
from .teachers import Counterexample, Teacher, TeacherError, honest_equal, positive_counterexample

log = logging.getLogger(__name__)


class StaleEntryError(TeacherError):
    pass


class ScriptExhausted(TeacherError):
    pass


class NotCanonical(ValueError):
    pass


@dataclass(frozen=True)
class ScriptEntry:
    x: int
    # None when the script file gave no sign
    positive: bool | None = None


Script = list[ScriptEntry]


def negatives(script: Script) -> list[int]:
    return [e.x for e in script if e.positive is False]


def build_fn_family(n: int) -> HornFormula:
    if n < 1:
        raise ValueError("f_n needs n >= 1")
    return HornFormula.of(2 * n + 1, [([i], [2 * n]) for i in range(n)])


def build_fn_script(n: int, repeat_positives: bool = False) -> Script:
    """Negative chains for each clause of ``f_n``, each step followed by positives.

    After a negative ``y`` come the examples ``σ - {d}`` for every ``d`` outside
    ``y`` other than the shared conclusion.  A positive example already served
    can never be a counterexample again, so repeats are left out unless
    ``repeat_positives`` is set.
    """
    if n < 1:
        raise ValueError("f_n needs n >= 1")
    nvars = 2 * n + 1
    sigma = full_set(nvars)
    top = 2 * n
    script: Script = []
    given: set[int] = set()
    for i in range(n):
        for j in range(1, n + 2):
            # x_i, then the first n - j + 1 of the block x_n .. x_{2n-1}
            y = 1 << i
            for k in range(n, 2 * n - j + 1):
                y |= 1 << k
            script.append(ScriptEntry(y, positive=False))
            for d in range(nvars):
                if d == top or y >> d & 1:
                    continue
                w = sigma & ~(1 << d)
                if repeat_positives or w not in given:
                    given.add(w)
                    script.append(ScriptEntry(w, positive=True))
    return script


def build_trivial_ordered_script(canonical: HornFormula) -> Script:
    return [ScriptEntry(c.antecedent, positive=False) for c in canonical_order(canonical).clauses]


@dataclass
class OrderReport:
    ok: bool
    violation: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def _size(mask: int) -> int:
    return bin(mask).count("1")


def validate_ordered(negs: list[int], canonical: HornFormula) -> OrderReport:
    """Check that negative counterexamples form one shrinking chain per clause.

    Chain ``i`` contains only supersets of ``α_i`` that miss some of ``β_i``
    and contain no ``α_k`` with ``α_k ⊈ α_i``; consecutive members shrink
    under intersection, and the chain ends exactly at ``α_i``.  Chains follow
    clause order, which must be by antecedent size.
    """
    if not is_normal_form(canonical):
        raise NotCanonical("target is not in normal form")
    sizes = [_size(c.antecedent) for c in canonical.clauses]
    if sizes != sorted(sizes):
        raise NotCanonical("clauses are not ordered by antecedent size")
    n = canonical.n
    antecedents = [c.antecedent for c in canonical.clauses]
    pos = 0
    for i, c in enumerate(canonical.clauses):
        alpha = c.antecedent
        foreign = [a for a in antecedents if not is_subset(a, alpha)]
        start = pos
        while True:
            if pos >= len(negs):
                return OrderReport(False, f"chain {i} never reaches its antecedent {to_bits(alpha, n)}")
            z = negs[pos]
            where = f"negative #{pos} ({to_bits(z, n)}) in chain {i}"
            if not is_subset(alpha, z):
                return OrderReport(False, f"{where} does not contain the antecedent")
            if not c.contradictory and is_subset(c.consequent.vars, z):
                return OrderReport(False, f"{where} contains the consequent")
            for a in foreign:
                if is_subset(a, z):
                    return OrderReport(False, f"{where} contains antecedent {to_bits(a, n)}")
            if pos > start:
                prev = negs[pos - 1]
                if not is_proper_subset(z & prev, prev):
                    return OrderReport(False, f"{where} does not shrink the previous negative")
            pos += 1
            if z == alpha:
                break
    if pos != len(negs):
        return OrderReport(False, f"{len(negs) - pos} negatives left after the last chain")
    return OrderReport(True)


class ScriptedTeacher(Teacher):
    """Replays a script of counterexamples, then hands over to an honest teacher.

    An entry is served only if it is a real counterexample for the current
    hypothesis; otherwise it is skipped, or with ``strict`` an error is raised.
    With ``interleave_positives`` a stale entry is first held back while the
    honest teacher supplies a positive counterexample, and retried afterwards.
    With ``fallback=None`` an exhausted script answers yes only if the
    hypothesis is really equivalent.
    """

    def __init__(
        self,
        target: HornFormula,
        script: Script,
        fallback: str | None = "honest",
        strict: bool = False,
        interleave_positives: bool = False,
    ):
        if fallback not in ("honest", None):
            raise ValueError(f"unknown fallback {fallback!r}")
        limit = full_set(target.n)
        for e in script:
            if e.x & ~limit:
                raise ValueError(f"script entry {e.x:#x} does not fit in {target.n} variables")
        self.target = target
        self.n = target.n
        self.script = list(script)
        self.fallback = fallback
        self.strict = strict
        self.interleave_positives = interleave_positives
        self.cursor = 0
        self.served: list[int] = []
        self.skipped: list[int] = []
        self.interleaved = 0

    def member(self, x: int) -> bool:
        return evaluate(self.target, x)

    def _live(self, entry: ScriptEntry, hypothesis: HornFormula) -> bool:
        in_target = evaluate(self.target, entry.x)
        if in_target == evaluate(hypothesis, entry.x):
            return False
        return entry.positive is None or entry.positive == in_target

    def equal(self, hypothesis: HornFormula) -> Counterexample | None:
        while self.cursor < len(self.script):
            entry = self.script[self.cursor]
            if self._live(entry, hypothesis):
                self.served.append(self.cursor)
                self.cursor += 1
                return Counterexample(entry.x, positive=evaluate(self.target, entry.x))
            if self.interleave_positives and self.fallback == "honest":
                ce = positive_counterexample(self.target, hypothesis)
                if ce is not None:
                    self.interleaved += 1
                    return ce
            if self.strict:
                raise StaleEntryError(
                    f"script entry #{self.cursor} ({to_bits(entry.x, self.n)}) is not a counterexample")
            log.info("skipping stale script entry #%d (%s)", self.cursor, to_bits(entry.x, self.n))
            self.skipped.append(self.cursor)
            self.cursor += 1
        ce = honest_equal(self.target, hypothesis)
        if ce is not None and self.fallback is None:
            raise ScriptExhausted("script exhausted but the hypothesis is not equivalent")
        return ce
