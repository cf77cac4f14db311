import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from hornlearn.core import (
    CONTRADICTION,
    CapacityError,
    Clause,
    Consequent,
    HornFormula,
    MalformedInput,
    brute_force_diff,
    brute_force_entails,
    brute_force_equal,
    closure,
    entails_clause,
    equivalent,
    evaluate,
    from_bits,
    full_set,
    is_subset,
    to_bits,
)
from hornlearn.normalize import normalize

from oracles import entails_by_models, least_model
from strategies import formula_pairs, formulas


def F(n, *clauses):
    return HornFormula.of(n, clauses)


def b(bits):
    return from_bits(bits)


def test_bitstrings_leftmost_is_x0():
    assert from_bits("100") == 0b001
    assert to_bits(0b110, 3) == "011"
    with pytest.raises(MalformedInput):
        from_bits("10x")


@pytest.mark.parametrize("z,expected", [("11", True), ("10", False), ("00", True), ("01", True)])
def test_eval_implication(z, expected):
    assert evaluate(F(2, ([0], [1])), b(z)) is expected


def test_eval_false_consequent():
    assert evaluate(F(3, ([0, 1], None)), b("110")) is False
    assert evaluate(F(3, ([0, 1], None)), b("100")) is True


def test_eval_empty_formula_is_true():
    assert evaluate(HornFormula(3), b("101"))


def test_eval_rejects_out_of_range():
    with pytest.raises(MalformedInput):
        evaluate(F(2, ([0], [1])), 0b100)
    with pytest.raises(MalformedInput):
        F(2, ([2], [1]))


def test_closure_examples():
    chain = F(3, ([0], [1]), ([1], [2]))
    assert closure(b("100"), chain) == b("111")
    assert closure(0, F(2, ([0], [1]))) == 0
    assert closure(b("1"), F(1, ([0], None))) is CONTRADICTION


def test_entails_examples():
    assert entails_clause(F(3, ([0], [1]), ([1], [2])), Clause.of([0], [2]))
    assert not entails_clause(F(2, ([0], [1])), Clause.of([1], [0]))
    assert entails_clause(F(3, ([0], None)), Clause.of([0], [2]))


def test_equivalent_examples():
    a = F(3, ([0], [1]), ([0, 1], [2]))
    c = F(3, ([0], [1]), ([0], [2]))
    assert equivalent(a, c) is None
    # oracle: all 8 assignments agree
    assert all(evaluate(a, z) == evaluate(c, z) for z in range(8))

    z = equivalent(F(2, ([0], [1])), F(2, ([1], [0])))
    assert to_bits(z, 2) == "10"
    assert evaluate(F(2, ([0], [1])), z) != evaluate(F(2, ([1], [0])), z)

    assert equivalent(HornFormula(1), F(1, ([0], [0]))) is None


def test_brute_force_equal_examples():
    assert brute_force_equal(F(2, ([0], [1])), F(2, ([0], [1])))
    assert brute_force_diff(HornFormula(1), F(1, ([0], None))) == b("1")
    phi = F(4, ([0], [1]), ([0, 2], [3]))
    assert brute_force_equal(normalize(phi), phi)
    # oracle: 16 assignments enumerated by hand-rolled loop
    assert all(evaluate(phi, z) == evaluate(normalize(phi), z) for z in range(16))


def test_brute_force_refuses_large_n():
    with pytest.raises(CapacityError):
        brute_force_equal(HornFormula(21), HornFormula(21))


def test_consequent_order():
    assert Consequent(0b01) <= Consequent(0b11)
    assert not Consequent(0b11) <= Consequent(0b01)
    assert Consequent(0b11) <= Consequent(0, True)
    assert not Consequent(0, True) <= Consequent(0b11)


@settings(max_examples=300)
@given(formulas(max_n=12), st.data())
def test_closure_is_extensive_monotone_idempotent(f, data):
    s1 = data.draw(st.integers(0, full_set(f.n)))
    s2 = s1 | data.draw(st.integers(0, full_set(f.n)))
    c1, c2 = closure(s1, f), closure(s2, f)
    if c1 is CONTRADICTION:
        assert c2 is CONTRADICTION
        return
    assert is_subset(s1, c1)
    assert closure(c1, f) == c1
    assert evaluate(f, c1)
    if c2 is not CONTRADICTION:
        assert is_subset(c1, c2)


@settings(max_examples=300)
@given(formulas(max_n=8), st.data())
def test_closure_matches_least_model(f, data):
    seed = data.draw(st.integers(0, full_set(f.n)))
    assert closure(seed, f) == least_model(seed, f)


@settings(max_examples=300)
@given(formula_pairs(max_n=10))
def test_equivalent_agrees_with_brute_force(pair):
    f1, f2 = pair
    z = equivalent(f1, f2)
    assert (z is None) == brute_force_equal(f1, f2)
    if z is not None:
        assert evaluate(f1, z) != evaluate(f2, z)


@settings(max_examples=300)
@given(formulas(max_n=10), st.data())
def test_entails_agrees_with_models(f, data):
    masks = st.integers(0, full_set(f.n))
    c = data.draw(st.builds(lambda a, c, flag: Clause(a, Consequent(c, flag)), masks, masks, st.booleans()))
    assert entails_clause(f, c) == entails_by_models(f, c) == brute_force_entails(f, c)
