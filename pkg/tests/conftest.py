import pytest
from hypothesis import strategies as st

from hornmonoid import Alphabet, Interpretation, Rule, Theory
from hornmonoid.oracle import composition_table, rule_universe, standard_alphabet
from hornmonoid.textio import read_theory

A2 = standard_alphabet(2)
A3 = standard_alphabet(3)
A4 = standard_alphabet(4)


def T(text: str) -> Theory:
    """Theory literal, e.g. ``T("a :- b, c. c.")``."""
    return read_theory(text)


def I(*names: str) -> Interpretation:
    return Interpretation.of(*names)


def theories(alphabet: Alphabet = A3, max_size: int = 8, krom: bool = False):
    return st.sets(st.sampled_from(rule_universe(alphabet, krom_only=krom)), max_size=max_size).map(
        lambda rs: Theory(frozenset(rs))
    )


def interpretations(alphabet: Alphabet = A3):
    return st.sets(st.sampled_from(sorted(alphabet.atoms))).map(lambda xs: Interpretation(frozenset(xs)))


@pytest.fixture(scope="session")
def table2():
    t = composition_table(A2)
    t.compose  # build once per session
    return t


# criterion number -> (passed, detail), filled in by test_acceptance.py
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {n:>2}: {detail}")
