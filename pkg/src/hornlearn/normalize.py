"""Canonical normal form for Horn formulas.

Consequents that mean False are carried as ``(σ, contradictory)`` once a
formula has been through :func:`normalize`.  That convention is ours: the
normal-form conditions say nothing about False consequents, and treating
False as "every variable, plus the flag" is what makes the
strict-containment and mutual-satisfaction conditions carry over unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import (
    CONTRADICTION,
    Clause,
    Consequent,
    HornFormula,
    closure,
    full_set,
    is_proper_subset,
    is_subset,
)


def _implied_vars(c: Clause, n: int) -> int:
    return full_set(n) if c.contradictory else c.consequent.vars


def merge_same_antecedents(f: HornFormula) -> HornFormula:
    merged: dict[int, Consequent] = {}
    for c in f.clauses:
        prev = merged.get(c.antecedent)
        merged[c.antecedent] = c.consequent if prev is None else prev.union(c.consequent)
    return HornFormula(f.n, tuple(Clause(a, b) for a, b in merged.items()))


def saturate_antecedents(f: HornFormula) -> tuple[HornFormula, bool]:
    """One pass of antecedent growth; returns the new formula and whether it changed.

    A clause ``α → β`` absorbs the consequent ``γ`` of every other clause
    ``κ → γ`` with ``κ ⊂ α``, as long as that actually adds something.
    Clauses are updated in place, so later clauses see earlier growth.
    """
    clauses = list(f.clauses)
    changed = False
    for i, c in enumerate(clauses):
        alpha = c.antecedent
        for j, other in enumerate(clauses):
            if j == i or not is_proper_subset(other.antecedent, alpha):
                continue
            gamma = _implied_vars(other, f.n)
            if not is_subset(gamma, alpha):
                alpha |= gamma
        if alpha != c.antecedent:
            clauses[i] = Clause(alpha, c.consequent)
            changed = True
    return HornFormula(f.n, tuple(clauses)), changed


def saturate_consequents(f: HornFormula) -> HornFormula:
    """Replace every consequent by the closure of its antecedent under ``f``."""
    sigma = full_set(f.n)
    out = []
    for c in f.clauses:
        model = closure(c.antecedent, f)
        if model is CONTRADICTION:
            out.append(Clause(c.antecedent, Consequent(sigma, True)))
        else:
            out.append(Clause(c.antecedent, Consequent(model)))
    return HornFormula(f.n, tuple(out))


def drop_trivial(f: HornFormula) -> HornFormula:
    """Delete ``α → β`` with ``β ⊆ α``, and False clauses subsumed by a smaller one."""
    false_ants = [c.antecedent for c in f.clauses if c.contradictory]
    kept = []
    for c in f.clauses:
        if c.contradictory:
            if any(is_proper_subset(k, c.antecedent) for k in false_ants):
                continue
        elif is_subset(c.consequent.vars, c.antecedent):
            continue
        kept.append(c)
    return HornFormula(f.n, tuple(kept))


def widen_consequents(f: HornFormula) -> HornFormula:
    sigma = full_set(f.n)
    out = []
    for c in f.clauses:
        if c.contradictory:
            out.append(Clause(c.antecedent, Consequent(sigma, True)))
        else:
            out.append(Clause(c.antecedent, Consequent(c.antecedent | c.consequent.vars)))
    return HornFormula(f.n, tuple(out))


def canonical_order(f: HornFormula) -> HornFormula:
    """Sort clauses by antecedent size, ties by bitmask."""
    ordered = sorted(f.clauses, key=lambda c: (bin(c.antecedent).count("1"), c.antecedent))
    return HornFormula(f.n, tuple(ordered))


def normalize_with_history(f: HornFormula) -> tuple[HornFormula, list[HornFormula]]:
    """Run the canonicalization pipeline, keeping each merge/saturate state.

    Consequents are closed first.  Without that, ``{x0→x1, x0 x1→x2}`` and
    ``{x0→x1 x2}`` would end in different forms.
    """
    current = merge_same_antecedents(saturate_consequents(f))
    history = [current]
    limit = len(current) * f.n + len(current) + 1
    for _ in range(limit):
        current, changed = saturate_antecedents(current)
        current = merge_same_antecedents(current)
        if not changed:
            break
        history.append(current)
    else:  # pragma: no cover - guarded by the progress measure
        raise RuntimeError("normalization did not reach a fixpoint")
    result = canonical_order(widen_consequents(drop_trivial(current)))
    return result, history


def normalize(f: HornFormula) -> HornFormula:
    return normalize_with_history(f)[0]


@dataclass
class NormalFormReport:
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def is_normal_form(f: HornFormula) -> NormalFormReport:
    report = NormalFormReport()
    seen: dict[int, int] = {}
    for i, c in enumerate(f.clauses):
        if c.antecedent in seen:
            report.violations.append(f"distinct antecedents: clauses {seen[c.antecedent]} and {i} share {c}")
        else:
            seen[c.antecedent] = i
        if not c.contradictory and not is_proper_subset(c.antecedent, c.consequent.vars):
            report.violations.append(f"antecedent not strictly inside consequent: clause {i} ({c})")
    for i, ci in enumerate(f.clauses):
        for j, cj in enumerate(f.clauses):
            if i != j and not ci.satisfied_by(cj.antecedent):
                report.violations.append(f"antecedent of clause {j} violates clause {i} ({ci})")
    return report
