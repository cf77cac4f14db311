import random

import pytest
from hypothesis import given, settings

from hornlearn.adversary import build_fn_family
from hornlearn.core import Clause, Consequent, HornFormula, brute_force_equal, entails_clause, full_set
from hornlearn.corpus import random_formula
from hornlearn.normalize import (
    is_normal_form,
    merge_same_antecedents,
    normalize,
    normalize_with_history,
    saturate_antecedents,
)

from strategies import formulas


def F(n, *clauses):
    return HornFormula.of(n, clauses)


def test_merge_unions_consequents():
    assert merge_same_antecedents(F(3, ([0], [1]), ([0], [2]))) == F(3, ([0], [1, 2]))


def test_merge_keeps_distinct_antecedents():
    f = F(3, ([0], [1]), ([1], [2]))
    assert merge_same_antecedents(f) == f


def test_merge_false_absorbs():
    merged = merge_same_antecedents(F(2, ([0], [1]), ([0], None)))
    assert len(merged) == 1
    assert merged.clauses[0].contradictory


def test_saturate_grows_antecedent():
    out, changed = saturate_antecedents(F(4, ([0], [1]), ([0, 2], [3])))
    assert changed
    assert out == F(4, ([0], [1]), ([0, 1, 2], [3]))


@pytest.mark.parametrize("f", [
    F(2, ([0], [1])),
    F(3, ([0], [1]), ([0, 1], [2])),
])
def test_saturate_no_op(f):
    out, changed = saturate_antecedents(f)
    assert not changed
    assert out == f


def test_normalize_example():
    phi = F(4, ([0], [1]), ([0, 2], [3]))
    out = normalize(phi)
    assert out == F(4, ([0], [0, 1]), ([0, 1, 2], [0, 1, 2, 3]))
    assert brute_force_equal(out, phi)


def test_normalize_drops_tautology():
    assert normalize(F(1, ([0], [0]))) == HornFormula(1)


def test_normalize_fn_family():
    assert normalize(build_fn_family(3)) == F(7, ([0], [0, 6]), ([1], [1, 6]), ([2], [2, 6]))


def test_chained_consequents_reach_one_form():
    # the two formulas differ only in how the consequent of x0 is spelled out
    a = F(3, ([0], [1]), ([0, 1], [2]))
    b = F(3, ([0], [1]), ([0], [2]))
    assert normalize(a) == normalize(b) == F(3, ([0], [0, 1, 2]))


def test_false_consequents():
    sigma = full_set(2)
    assert normalize(F(2, ([0], None), ([0, 1], None))) == HornFormula(2, (Clause(1, Consequent(sigma, True)),))
    out = normalize(F(2, ([0], [1]), ([1], None)))
    assert [c.contradictory for c in out] == [True, True]
    assert normalize(F(2, ([0, 1], None))).clauses == (Clause(0b11, Consequent(sigma, True)),)


def test_is_normal_form_examples():
    assert is_normal_form(F(4, ([0], [0, 1]), ([0, 1, 2], [0, 1, 2, 3])))
    report = is_normal_form(F(2, ([0], [1])))
    assert not report and "strictly" in report.violations[0]
    report = is_normal_form(F(4, ([0], [0, 1]), ([0, 2], [0, 2, 3])))
    assert not report and any("violates clause 0" in v for v in report.violations)
    assert not is_normal_form(F(2, ([0], [0, 1]), ([0], [0, 1])))


def test_output_sorted_by_antecedent_size():
    out = normalize(F(4, ([0, 1], [2]), ([3], [0])))
    sizes = [bin(c.antecedent).count("1") for c in out]
    assert sizes == sorted(sizes)


@settings(max_examples=400)
@given(formulas(max_n=10, max_clauses=10))
def test_normalize_sound_canonical_idempotent(f):
    out = normalize(f)
    assert brute_force_equal(out, f)
    assert is_normal_form(out), is_normal_form(out).violations
    assert normalize(out).sorted_key() == out.sorted_key()


@settings(max_examples=300)
@given(formulas(max_n=10, max_clauses=10))
def test_pipeline_makes_progress(f):
    _, history = normalize_with_history(f)
    for before, after in zip(history, history[1:]):
        grew = sum(bin(c.antecedent).count("1") for c in after) > sum(
            bin(c.antecedent).count("1") for c in before)
        assert grew or len(after) < len(before)
    m = len(history[0])
    assert len(history) - 1 <= m * f.n + m


def _rewrite(f, rng):
    """An equivalent formula: shuffled, with entailed clauses added and duplicates split."""
    clauses = list(f.clauses)
    for _ in range(rng.randint(0, 4)):
        a = rng.getrandbits(f.n)
        c = rng.choice([Clause(a, Consequent(rng.getrandbits(f.n))), Clause(a, Consequent(0, True))])
        if entails_clause(f, c):
            clauses.append(c)
    rng.shuffle(clauses)
    return HornFormula(f.n, tuple(clauses))


def test_uniqueness_on_rewritten_formulas():
    rng = random.Random(7)
    for _ in range(400):
        n = rng.randint(1, 8)
        f = random_formula(rng, n, rng.randint(0, 8))
        g = _rewrite(normalize(f) if rng.random() < 0.5 else f, rng)
        assert brute_force_equal(f, g)
        assert normalize(f).sorted_key() == normalize(g).sorted_key()


@settings(max_examples=200)
@given(formulas(n=6, max_clauses=5), formulas(n=6, max_clauses=5))
def test_uniqueness_random_pairs(f, g):
    if brute_force_equal(f, g):
        assert normalize(f).sorted_key() == normalize(g).sorted_key()
    else:
        assert normalize(f).sorted_key() != normalize(g).sorted_key()
