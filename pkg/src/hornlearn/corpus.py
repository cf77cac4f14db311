"""Seeded random Horn formulas for tests and benchmarks."""

from __future__ import annotations

import random

from .core import Clause, Consequent, HornFormula, from_indices
from .normalize import normalize


def random_formula(
    rng: random.Random,
    n: int,
    m: int,
    p: float | None = None,
    false_rate: float = 0.1,
) -> HornFormula:
    """``m`` clauses over ``n`` variables.

    Antecedent sizes are one plus a geometric count with success probability
    ``p`` (default ``3 / (n + 3)``), capped at ``n``.  Empty antecedents are
    avoided because a single ``T -> x`` collapses most of the formula.  A
    consequent is False with probability ``false_rate``, otherwise one or two
    variables.
    """
    if p is None:
        p = 3 / (n + 3)
    clauses = []
    for _ in range(m):
        size = min(1, n)
        while size < n and rng.random() > p:
            size += 1
        antecedent = from_indices(rng.sample(range(n), size))
        if n == 0 or rng.random() < false_rate:
            clauses.append(Clause(antecedent, Consequent(0, True)))
        else:
            k = 1 if n == 1 or rng.random() < 0.7 else 2
            clauses.append(Clause(antecedent, Consequent(from_indices(rng.sample(range(n), k)))))
    return HornFormula(n, tuple(clauses))


def random_canonical_target(rng: random.Random, n: int, m: int, **kwargs) -> HornFormula:
    return normalize(random_formula(rng, n, m, **kwargs))
