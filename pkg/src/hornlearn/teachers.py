"""Membership and equivalence queries against a hidden target."""

from __future__ import annotations

from dataclasses import dataclass

from .core import CONTRADICTION, HornFormula, MalformedInput, closure, evaluate


class TeacherError(Exception):
    """The teacher cannot continue the protocol."""


@dataclass(frozen=True)
class Counterexample:
    x: int
    positive: bool

    @property
    def sign(self) -> str:
        return "+" if self.positive else "-"


class Teacher:
    """Answers ``member(x)`` and ``equal(H)``; ``equal`` returns ``None`` for yes."""

    n: int

    def member(self, x: int) -> bool:
        raise NotImplementedError

    def equal(self, hypothesis: HornFormula) -> Counterexample | None:
        raise NotImplementedError


def honest_member(target: HornFormula, x: int) -> bool:
    return evaluate(target, x)


def negative_counterexample(target: HornFormula, hypothesis: HornFormula) -> Counterexample | None:
    for c in target.clauses:
        z = closure(c.antecedent, hypothesis)
        if z is not CONTRADICTION and not c.satisfied_by(z):
            return Counterexample(z, positive=False)
    return None


def positive_counterexample(target: HornFormula, hypothesis: HornFormula) -> Counterexample | None:
    for c in hypothesis.clauses:
        z = closure(c.antecedent, target)
        if z is not CONTRADICTION and not c.satisfied_by(z):
            return Counterexample(z, positive=True)
    return None


def honest_equal(target: HornFormula, hypothesis: HornFormula) -> Counterexample | None:
    """Deterministic equivalence check; negative counterexamples are preferred.

    Target clauses are tried in listed order against the hypothesis, then
    hypothesis clauses against the target.
    """
    if target.n != hypothesis.n:
        raise MalformedInput("hypothesis and target have different variable counts")
    return negative_counterexample(target, hypothesis) or positive_counterexample(target, hypothesis)


class HonestTeacher(Teacher):
    def __init__(self, target: HornFormula):
        self.target = target
        self.n = target.n

    def member(self, x: int) -> bool:
        return honest_member(self.target, x)

    def equal(self, hypothesis: HornFormula) -> Counterexample | None:
        return honest_equal(self.target, hypothesis)


class CountingTeacher(Teacher):
    def __init__(self, inner: Teacher):
        self.inner = inner
        self.n = inner.n
        self.member_queries = 0
        self.equal_queries = 0

    def member(self, x: int) -> bool:
        self.member_queries += 1
        return self.inner.member(x)

    def equal(self, hypothesis: HornFormula) -> Counterexample | None:
        self.equal_queries += 1
        return self.inner.equal(hypothesis)

    def snapshot(self) -> tuple[int, int]:
        """``(member_queries, equal_queries)``"""
        return self.member_queries, self.equal_queries
