import random

import pytest
from hypothesis import given

from hornmonoid import AlphabetError, Interpretation, ParseError, Theory
from hornmonoid.algebra import compose, star, unit
from hornmonoid.errors import ArityError, EvaluationTypeError, UnboundIdentifierError
from hornmonoid.oracle import _sample_theory, standard_alphabet
from hornmonoid.semantics import least_model
from hornmonoid.textio import (
    FUNCTIONS,
    Call,
    Name,
    eval_expression,
    format_atoms,
    parse_expression,
    parse_theory,
    read_theory,
    serialize_document,
    serialize_theory,
)

from conftest import A2, A3, I, T, theories


class TestParse:
    def test_facts_and_rules(self):
        p = read_theory("a.\nb :- a.")
        assert len(p) == 2 and p.facts() == T("a.")
        assert serialize_theory(p) == "a.\nb :- a.\n"

    def test_primes(self):
        p = read_theory("a :- b', c'.")
        (r,) = p.rules
        assert sorted(str(x) for x in r.body) == ["b'", "c'"]

    def test_comments_whitespace_duplicates(self):
        src = "% a comment\n  a :-b,\n c .\n a:-c,b.  % trailing\n"
        assert read_theory(src) == T("a :- b, c.")

    def test_duplicate_body_atoms_collapse(self):
        assert read_theory("a :- b, b.") == T("a :- b.")

    def test_alphabet_header(self):
        doc = parse_theory("#alphabet a, b, c.\na :- b.")
        assert doc.theory == T("a :- b.")
        assert doc.alphabet.atoms == A3.atoms
        assert serialize_document(doc) == "#alphabet a, b, c.\na :- b.\n"

    def test_alphabet_header_excludes_atom(self):
        with pytest.raises(AlphabetError):
            parse_theory("#alphabet a.\na :- b.")

    def test_empty(self):
        assert read_theory("") == Theory()
        assert read_theory("% nothing\n") == Theory()

    def test_empty_body_is_an_error(self):
        with pytest.raises(ParseError) as exc:
            read_theory("a :- .")
        assert exc.value.line == 1
        assert exc.value.column == 6
        assert "atom" in exc.value.expected

    @pytest.mark.parametrize(
        "src, line",
        [
            ("a", 1),
            ("a.\nb :- c", 2),
            ("a.\n\nB.", 3),
            ("a :- b c.", 1),
            ("a. ?", 1),
        ],
    )
    def test_errors_carry_position(self, src, line):
        with pytest.raises(ParseError) as exc:
            read_theory(src)
        assert exc.value.line == line
        assert str(line) in str(exc.value)


class TestSerialize:
    def test_canonical_order(self):
        assert serialize_theory(T("b :- a. a.")) == "a.\nb :- a.\n"
        assert serialize_theory(T("c. a :- c, b. b.")) == "b.\nc.\na :- b, c.\n"

    def test_empty(self):
        assert serialize_theory(Theory()) == ""

    def test_interpretation(self):
        assert serialize_theory(I("b", "a")) == "a.\nb.\n"
        assert format_atoms(I("c", "a", "b")) == "a, b, c"
        assert format_atoms(I()) == ""

    @given(theories(standard_alphabet(4)))
    def test_round_trip(self, p):
        text = serialize_theory(p)
        assert read_theory(text) == p
        assert serialize_theory(read_theory(text)) == text

    def test_round_trip_primed(self):
        p = T("a :- a', b''. b' :- a.")
        assert read_theory(serialize_theory(p)) == p

    def test_serialize_is_canonicalization(self):
        rng = random.Random(7)
        for _ in range(50):
            p = _sample_theory(rng, A3)
            lines = serialize_theory(p).splitlines()
            rng.shuffle(lines)
            assert serialize_theory(read_theory("\n".join(lines))) == serialize_theory(p)


class TestExpressions:
    def test_precedence(self):
        e = parse_expression("P + Q * R^*")
        assert isinstance(e, Call) and e.fn == "union"
        right = e.args[1]
        assert right.fn == "compose"
        assert right.args[1].fn == "star"
        assert isinstance(right.args[1].args[0], Name)

    def test_unit_law(self):
        p = T("a :- b. b.")
        assert eval_expression("P * unit({a, b})", {"P": p}) == p

    def test_body_removal(self):
        assert eval_expression("{a :- b,c.} * ({b :- b.} + {c.})") == T("a :- b.")

    def test_omega(self):
        p = T("a. b :- a.")
        assert eval_expression("P^w", {"P": p}) == I("a", "b")
        assert eval_expression("lm(P)", {"P": p}) == I("a", "b")

    @given(theories())
    def test_omega_matches_least_model(self, p):
        assert eval_expression("P^w", {"P": p}, A3) == least_model(p)

    def test_powers_and_star(self):
        p = T("b :- a. c :- b.")
        assert eval_expression("P^2", {"P": p}) == compose(p, p)
        assert eval_expression("P^0", {"P": p}) == unit(A3)
        assert eval_expression("power(P, 2)", {"P": p}) == compose(p, p)
        assert eval_expression("P^*", {"P": p}) == star(p, A3)
        assert eval_expression("P^+", {"P": p}) == compose(star(p, A3), p)

    def test_alphabet_dependent_operators(self):
        assert eval_expression("unit()", alphabet=A2) == unit(A2)
        assert eval_expression("ominus({c})", alphabet=A3) == T("a :- a. b :- b. c.")
        assert eval_expression("{a :- b.} * oplus({c})", alphabet=A3) == T("a :- b, c.")

    def test_other_functions(self):
        p = T("a :- b, c. c.")
        env = {"P": p}
        assert eval_expression("heads(P)", env) == I("a", "c")
        assert eval_expression("bodies(P)", env) == I("b", "c")
        assert eval_expression("facts(P)", env) == T("c.")
        assert eval_expression("proper(P)", env) == T("a :- b, c.")
        assert eval_expression("rev({a :- b.})") == T("b :- a.")
        assert eval_expression("cl({a.}, {b})") == T("a. b :- b.")
        assert eval_expression("lred(P, {a})", env) == T("a :- b, c.")
        assert eval_expression("rred(P, {b, c})", env) == p
        assert eval_expression("restrict(P, {c})", env) == T("c.")
        assert eval_expression("tp(P, {b, c})", env) == I("a", "c")
        assert eval_expression("compose(bridge_up(), bridge_down())", alphabet=A2) == unit(A2)
        assert eval_expression("union(P, {d.}, {e.})", env) == T("a :- b, c. c. d. e.")

    def test_every_function_is_callable(self):
        assert set(FUNCTIONS) >= {"compose", "union", "lm", "tp", "bridge_up", "bridge_down"}

    def test_interpretation_literal(self):
        v = eval_expression("{a, b}")
        assert isinstance(v, Interpretation) and v == I("a", "b")

    def test_unbound(self):
        with pytest.raises(UnboundIdentifierError):
            eval_expression("P * Q", {"P": T("a.")})

    def test_arity(self):
        with pytest.raises(ArityError):
            eval_expression("star({a.}, {b.})")
        with pytest.raises(ArityError):
            eval_expression("compose({a.})")

    def test_type_errors(self):
        with pytest.raises(EvaluationTypeError):
            eval_expression("cl({a.}, {a :- b.})")

    def test_alphabet_violation(self):
        with pytest.raises(AlphabetError):
            eval_expression("{c.} * unit()", alphabet=A2)

    @pytest.mark.parametrize("src", ["P *", "(P", "P^", "{a :- .}", "foo(P)", "P ^ x"])
    def test_syntax_errors(self, src):
        with pytest.raises(ParseError):
            parse_expression(src)
