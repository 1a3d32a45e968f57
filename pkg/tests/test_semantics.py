import pytest
from hypothesis import given

from hornmonoid import Interpretation, Rule, Theory
from hornmonoid.algebra import compose, omega, union
from hornmonoid.decomposition import elevator
from hornmonoid.oracle import enumerate_interpretations, operator_equal, random_theory
from hornmonoid.semantics import (
    ModelStatus,
    check_model,
    commutes,
    equivalent,
    least_model,
    subsumption_equivalent,
    subsumption_normal_form,
    tp,
)

from conftest import A3, A4, I, T, interpretations, theories


def test_tp_small():
    p = T("a. b :- a. c :- b, d.")
    assert tp(p, I()) == I("a")
    assert tp(p, I("a")) == I("a", "b")
    assert tp(p, I("b", "d")) == I("a", "c")


@given(theories(), interpretations())
def test_tp_is_composition_with_interpretation(p, i):
    assert tp(p, i).as_theory() == compose(p, i)


@given(theories(), theories(), interpretations())
def test_tp_homomorphism(p, r, i):
    assert tp(p, tp(r, i)) == tp(compose(p, r), i)
    assert tp(union(p, r), i) == tp(p, i) | tp(r, i)


@pytest.mark.parametrize(
    "p, i, status",
    [
        (T("a. b :- a."), I("a", "b"), ModelStatus.SUPPORTED_MODEL),
        (T("a. b :- a."), I("a", "b", "c"), ModelStatus.MODEL),
        (T("a. b :- a."), I("a"), ModelStatus.NOT_MODEL),
        (T("a :- a."), I(), ModelStatus.SUPPORTED_MODEL),
    ],
)
def test_check_model(p, i, status):
    assert check_model(p, i) is status


def test_least_model_elevator():
    e = elevator(["a", "b", "c"])
    assert least_model(e) == I("a", "b", "c")
    assert least_model(e, "omega") == I("a", "b", "c")


def test_least_model_of_cycle_is_empty():
    assert least_model(T("a :- b. b :- a.")) == I()


def test_least_model_unknown_strategy():
    with pytest.raises(ValueError):
        least_model(T("a."), "magic")


@given(theories())
def test_least_model_is_least(p):
    lm = least_model(p)
    assert check_model(p, lm) is ModelStatus.SUPPORTED_MODEL
    for j in enumerate_interpretations(A3):
        if check_model(p, j) is not ModelStatus.NOT_MODEL:
            assert lm.atoms <= j.atoms


@pytest.mark.parametrize("seed", range(200))
def test_iterate_matches_omega_on_four_atoms(seed):
    p = random_theory(seed, A4, rule_count=6)
    assert least_model(p) == omega(p, A4)


def test_equivalent_compares_least_models():
    assert equivalent(T("a. b :- a."), T("a. b."))
    assert not equivalent(T("a."), T("b."))


def test_normal_form_drops_subsumed_bodies():
    p = T("a :- b. a :- b, c. c :- a. c.")
    assert subsumption_normal_form(p) == T("a :- b. c.")


@given(theories(), theories())
def test_normal_form_decides_operator_equality(p, r):
    assert subsumption_equivalent(p, r) == operator_equal(p, r, A3)


@given(theories())
def test_normal_form_is_operator_equal_and_idempotent(p):
    nf = subsumption_normal_form(p)
    assert operator_equal(p, nf, A3)
    assert subsumption_normal_form(nf) == nf


@given(theories(), theories(), theories(), interpretations())
def test_congruence(q, p, s, extra):
    # pad every rule of p with a weakened copy; the operator is unchanged
    r2 = union(p, Theory(frozenset(Rule(r.head, r.body | extra.atoms) for r in p.rules)))
    assert subsumption_equivalent(p, r2)
    assert subsumption_equivalent(compose(q, p), compose(q, r2))
    assert subsumption_equivalent(compose(p, s), compose(r2, s))
    assert subsumption_equivalent(union(p, s), union(r2, s))


@given(theories(), interpretations())
def test_commutes_iff_supported_model(p, i):
    assert commutes(p, i) == (tp(p, i) == i)


def test_commutes_example():
    assert commutes(T("a. b :- a."), I("a", "b"))
    assert not commutes(T("a. b :- a."), I("a"))
    assert isinstance(tp(Theory(), Interpretation()), Interpretation)
