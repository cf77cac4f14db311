"""Variables, assignments, Horn clauses and formulas.

A set of variables is a plain ``int`` bitmask: bit ``i`` set means ``x_i`` is
a member.  The same mask doubles as a truth assignment (its true-set).  When
printed as a bitstring the leftmost character is ``x0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

MAX_VARS = 1024
BRUTE_FORCE_LIMIT = 20


class MalformedInput(ValueError):
    """A value does not fit the declared variable count."""


class CapacityError(ValueError):
    """A request exceeds an enumeration bound."""


class _Contradiction:
    __slots__ = ()

    def __repr__(self) -> str:
        return "CONTRADICTION"


#: Returned by :func:`closure` when a clause with a False consequent fires.
CONTRADICTION = _Contradiction()


def full_set(n: int) -> int:
    return (1 << n) - 1


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def is_proper_subset(a: int, b: int) -> bool:
    return a != b and a & ~b == 0


def members(mask: int) -> Iterator[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def from_indices(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def to_bits(mask: int, n: int) -> str:
    return "".join("1" if mask >> i & 1 else "0" for i in range(n))


def from_bits(bits: str) -> int:
    mask = 0
    for i, ch in enumerate(bits):
        if ch == "1":
            mask |= 1 << i
        elif ch != "0":
            raise MalformedInput(f"not a bitstring: {bits!r}")
    return mask


def format_vars(mask: int) -> str:
    return " ".join(f"x{i}" for i in members(mask))


@dataclass(frozen=True)
class Consequent:
    vars: int = 0
    contradictory: bool = False

    def __le__(self, other: Consequent) -> bool:
        if other.contradictory:
            return True
        if self.contradictory:
            return False
        return is_subset(self.vars, other.vars)

    def union(self, other: Consequent) -> Consequent:
        return Consequent(self.vars | other.vars, self.contradictory or other.contradictory)


FALSE = Consequent(0, True)


@dataclass(frozen=True)
class Clause:
    antecedent: int
    consequent: Consequent

    @classmethod
    def of(cls, antecedent: Iterable[int], consequent: Iterable[int] | None) -> Clause:
        """Build from index lists; ``consequent=None`` means False."""
        if consequent is None:
            return cls(from_indices(antecedent), FALSE)
        return cls(from_indices(antecedent), Consequent(from_indices(consequent)))

    @property
    def contradictory(self) -> bool:
        return self.consequent.contradictory

    def satisfied_by(self, z: int) -> bool:
        if not is_subset(self.antecedent, z):
            return True
        return not self.consequent.contradictory and is_subset(self.consequent.vars, z)

    def sort_key(self) -> tuple[int, int, bool]:
        return (self.antecedent, self.consequent.vars, self.consequent.contradictory)

    def __str__(self) -> str:
        lhs = format_vars(self.antecedent) or "T"
        rhs = "F" if self.contradictory else format_vars(self.consequent.vars)
        return f"{lhs} -> {rhs}"


@dataclass(frozen=True)
class HornFormula:
    """Ordered conjunction of clauses over ``n`` variables; no clauses is True."""

    n: int
    clauses: tuple[Clause, ...] = ()

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_VARS:
            raise MalformedInput(f"variable count {self.n} outside 0..{MAX_VARS}")
        object.__setattr__(self, "clauses", tuple(self.clauses))
        limit = full_set(self.n)
        for c in self.clauses:
            # contradictory consequents may carry any vars; only the flag matters
            cvars = 0 if c.consequent.contradictory else c.consequent.vars
            if (c.antecedent | cvars) & ~limit:
                raise MalformedInput(f"clause {c} mentions a variable beyond x{self.n - 1}")

    @classmethod
    def of(cls, n: int, clauses: Iterable[tuple[Iterable[int], Iterable[int] | None]]) -> HornFormula:
        return cls(n, tuple(Clause.of(a, b) for a, b in clauses))

    def __len__(self) -> int:
        return len(self.clauses)

    def __iter__(self) -> Iterator[Clause]:
        return iter(self.clauses)

    def sorted_key(self) -> tuple[tuple[int, int, bool], ...]:
        """Order-insensitive identity of the clause set."""
        return tuple(sorted(c.sort_key() for c in self.clauses))

    def same_clauses(self, other: HornFormula) -> bool:
        return self.n == other.n and self.sorted_key() == other.sorted_key()

    def __str__(self) -> str:
        if not self.clauses:
            return "T"
        return "; ".join(str(c) for c in self.clauses)


def _check_assignment(formula: HornFormula, z: int) -> None:
    if z < 0 or z >> formula.n:
        raise MalformedInput(f"assignment {z:#x} does not fit in {formula.n} variables")


def evaluate(formula: HornFormula, z: int) -> bool:
    _check_assignment(formula, z)
    return all(c.satisfied_by(z) for c in formula.clauses)


def closure(seed: int, formula: HornFormula) -> int | _Contradiction:
    """Forward-chain ``seed`` to the least model containing it."""
    _check_assignment(formula, seed)
    current = seed
    pending: Sequence[Clause] = formula.clauses
    fired = True
    while fired:
        fired = False
        waiting = []
        for c in pending:
            if is_subset(c.antecedent, current):
                if c.consequent.contradictory:
                    return CONTRADICTION
                if not is_subset(c.consequent.vars, current):
                    current |= c.consequent.vars
                    fired = True
            else:
                waiting.append(c)
        pending = waiting
    return current


def entails_clause(formula: HornFormula, c: Clause) -> bool:
    model = closure(c.antecedent, formula)
    if model is CONTRADICTION:
        return True
    return c.satisfied_by(model)


def equivalent(f1: HornFormula, f2: HornFormula) -> int | None:
    """Return ``None`` if the formulas agree, else an assignment where they differ.

    Clauses of ``f1`` are checked against ``f2`` first, then the reverse.  The
    witness is the closure of the failing antecedent under the entailing side,
    so it is a model of that side and violates the other.
    """
    if f1.n != f2.n:
        raise MalformedInput("formulas have different variable counts")
    for side, other in ((f1, f2), (f2, f1)):
        for c in side.clauses:
            model = closure(c.antecedent, other)
            if model is not CONTRADICTION and not c.satisfied_by(model):
                return model
    return None


def brute_force_diff(f1: HornFormula, f2: HornFormula) -> int | None:
    """First assignment (in bitmask order) where the formulas disagree."""
    if f1.n != f2.n:
        raise MalformedInput("formulas have different variable counts")
    if f1.n > BRUTE_FORCE_LIMIT:
        raise CapacityError(f"refusing to enumerate 2^{f1.n} assignments")
    for z in range(1 << f1.n):
        if evaluate(f1, z) != evaluate(f2, z):
            return z
    return None


def brute_force_equal(f1: HornFormula, f2: HornFormula) -> bool:
    return brute_force_diff(f1, f2) is None


def truth_table(formula: HornFormula) -> int:
    """Models packed as a bitmask over assignments."""
    if formula.n > BRUTE_FORCE_LIMIT:
        raise CapacityError(f"refusing to enumerate 2^{formula.n} assignments")
    table = 0
    for z in range(1 << formula.n):
        if evaluate(formula, z):
            table |= 1 << z
    return table


def brute_force_entails(formula: HornFormula, c: Clause) -> bool:
    """Every model of ``formula`` satisfies ``c``, by enumeration."""
    if formula.n > BRUTE_FORCE_LIMIT:
        raise CapacityError(f"refusing to enumerate 2^{formula.n} assignments")
    return all(c.satisfied_by(z) for z in range(1 << formula.n) if evaluate(formula, z))

