import itertools

import numpy as np
import pytest

from hornmonoid import CyclicError, DomainTooLargeError, Theory
from hornmonoid.algebra import compose, union
from hornmonoid.decomposition import level_mapping
from hornmonoid.errors import UnknownLawError, UnsatisfiableParamsError
from hornmonoid.oracle import (
    LAWS,
    check_all,
    check_law,
    enumerate_interpretations,
    enumerate_permutations,
    enumerate_theories,
    literal_compose,
    random_theory,
    rule_universe,
    standard_alphabet,
)
from hornmonoid.semantics import tp

from conftest import A2, A3, T

A1 = standard_alphabet(1)

# laws that are true as stated at |A| = 2
HOLDING = sorted(k for k, lw in LAWS.items() if not lw.expect_failure and k != "assoc")


@pytest.mark.parametrize(
    "alphabet, kwargs, count",
    [
        (A1, {}, 4),
        (A2, {}, 256),
        (A2, {"krom_only": True}, 64),
        (A2, {"proper_only": True}, 64),
        (A2, {"max_body": 1}, 64),
    ],
)
def test_enumeration_sizes(alphabet, kwargs, count):
    ts = list(enumerate_theories(alphabet, **kwargs))
    assert len(ts) == count == len(set(ts))


def test_enumeration_one_atom():
    assert set(enumerate_theories(A1)) == {Theory(), T("a."), T("a :- a."), T("a. a :- a.")}


def test_enumeration_is_deterministic():
    assert list(enumerate_theories(A2)) == list(enumerate_theories(A2))


def test_enumeration_guard():
    with pytest.raises(DomainTooLargeError):
        next(enumerate_theories(A3))


def test_other_enumerations():
    assert len(list(enumerate_interpretations(A3))) == 8
    assert len(list(enumerate_permutations(standard_alphabet(4)))) == 24
    assert len(rule_universe(A3)) == 3 * 8


def test_literal_compose_matches_compose_exhaustively():
    ts = list(enumerate_theories(A2))
    for p, r in itertools.product(ts, repeat=2):
        assert literal_compose(p, r) == compose(p, r)


def test_table_agrees_with_compose(table2):
    ts = list(enumerate_theories(A2))
    codes = [table2.encode(t) for t in ts]
    assert codes == list(range(256))
    for i in range(0, 256, 7):
        for j in range(0, 256, 5):
            assert table2.decode(int(table2.compose[i, j])) == compose(ts[i], ts[j])
            assert table2.decode(int(table2.union[i, j])) == union(ts[i], ts[j])
    for i, interp in enumerate(table2.interpretations):
        for k in range(256):
            want = table2.encode_atoms(tp(ts[k], interp))
            assert int(table2.tp[k, i]) == want


def test_random_theory_determinism():
    assert random_theory(5, A3) == random_theory(5, A3)
    assert len(random_theory(5, A3, rule_count=6)) == 6


def test_random_theory_acyclic_contract():
    a = standard_alphabet(5)
    for seed in range(1000):
        level_mapping(random_theory(seed, a, rule_count=5, acyclic=True))


def test_random_theory_sometimes_cyclic():
    cyclic = 0
    for seed in range(200):
        try:
            level_mapping(random_theory(seed, A3, rule_count=5))
        except CyclicError:
            cyclic += 1
    assert 0 < cyclic < 200


def test_random_theory_unsatisfiable():
    with pytest.raises(UnsatisfiableParamsError):
        random_theory(0, A1, rule_count=3)
    with pytest.raises(UnsatisfiableParamsError):
        random_theory(0, A1, rule_count=2, acyclic=True)


def test_unknown_law():
    with pytest.raises(UnknownLawError):
        check_law("no_such_law", A2)
    with pytest.raises(KeyError):
        check_law("no_such_law", A2)


def test_bad_mode():
    with pytest.raises(ValueError):
        check_law("unit", A1, mode="fuzzy")


def test_lm_omega_one_atom():
    r = check_law("lm_omega", A1)
    assert r.cases_checked == 4 and r.holds


@pytest.mark.parametrize("law_id", sorted(LAWS))
def test_every_law_on_one_atom(law_id):
    r = check_law(law_id, A1)
    assert r.cases_checked > 0
    if law_id not in ("left_distributivity", "proper_composition", "assoc"):
        assert r.holds, [c.describe() for c in r.counterexamples]


@pytest.mark.parametrize("law_id", HOLDING)
def test_holding_laws_exhaustive_two_atoms(law_id):
    r = check_law(law_id, A2)
    assert r.holds, [c.describe() for c in r.counterexamples]
    assert r.as_expected


@pytest.mark.parametrize("law_id", HOLDING)
def test_holding_laws_sampled_three_atoms(law_id):
    r = check_law(law_id, A3, mode="sampled", seed=1, count=200)
    assert r.holds, [c.describe() for c in r.counterexamples]


def test_left_distributivity_fails_with_renamed_golden_instance():
    r = check_law("left_distributivity", A2)
    assert not r.holds and r.as_expected
    assert r.violations > len(r.counterexamples) == 10
    # the {a :- b,c} ∘ ({b} ∪ {c}) shape, renamed into two atoms
    found = {c.inputs for c in r.counterexamples}
    assert (T("a :- a, b."), T("a."), T("b.")) in found
    p, q, s = T("a :- a, b."), T("a."), T("b.")
    assert compose(p, union(q, s)) == T("a.")
    assert union(compose(p, q), compose(p, s)) == Theory()


def test_left_distributivity_golden_instance_three_atoms():
    from hornmonoid.oracle import get_law

    lhs, rhs = get_law("left_distributivity").check(A3, T("a :- b, c."), T("b."), T("c."))
    assert lhs == T("a.") and rhs == Theory()


def test_proper_composition_fails_as_documented():
    r = check_law("proper_composition", A2)
    assert not r.holds and r.as_expected


def test_associativity_counterexamples_are_reported():
    r = check_law("assoc", A2)
    assert r.cases_checked == 256 ** 3
    assert r.violations == 202752
    c = r.counterexamples[0]
    p, q, s = c.inputs
    assert compose(compose(p, q), s) == c.lhs
    assert compose(p, compose(q, s)) == c.rhs
    assert c.lhs < c.rhs
    assert "lhs=" in c.describe()


def test_congruence_sweep_size():
    r = check_law("subsumption_congruence", A2)
    assert r.holds and r.cases_checked == 398_721_024


def test_check_all_reports_too_large():
    out = check_all(A3, law_ids=["unit_meet", "assoc"])
    assert out[0].holds
    assert isinstance(out[1], tuple) and isinstance(out[1][1], DomainTooLargeError)


def test_sampled_is_deterministic():
    a = check_law("assoc", A3, mode="sampled", seed=3, count=300)
    b = check_law("assoc", A3, mode="sampled", seed=3, count=300)
    assert a.violations == b.violations
    assert [c.inputs for c in a.counterexamples] == [c.inputs for c in b.counterexamples]


def test_bool_tables_are_numpy(table2):
    assert isinstance(table2.compose, np.ndarray)
    assert table2.compose.shape == (256, 256)
