"""Atoms, rules, theories and interpretations.

Every value here is immutable and hashable. Rule bodies are sets, so a rule
written with a repeated body atom collapses to the rule with that atom once.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Union

from .errors import AlphabetError

ATOM_NAME = re.compile(r"[a-z][A-Za-z0-9_]*")
_ATOM_TEXT = re.compile(r"([a-z][A-Za-z0-9_]*)('*)")


class _AtomFields(NamedTuple):
    name: str
    primes: int


class Atom(_AtomFields):
    """A propositional atom; ``primes`` counts trailing apostrophes.

    Atoms order by ``(name, primes)``.
    """

    __slots__ = ()

    def __new__(cls, name: str, primes: int = 0):
        if not isinstance(name, str) or not ATOM_NAME.fullmatch(name):
            raise ValueError(f"invalid atom name: {name!r}")
        if primes < 0:
            raise ValueError("primes must be non-negative")
        return super().__new__(cls, name, primes)

    @classmethod
    def parse(cls, text: str) -> "Atom":
        m = _ATOM_TEXT.fullmatch(text.strip())
        if not m:
            raise ValueError(f"invalid atom: {text!r}")
        return cls(m.group(1), len(m.group(2)))

    def prime(self, n: int = 1) -> "Atom":
        return Atom(self.name, self.primes + n)

    def unprime(self, n: int = 1) -> "Atom":
        return Atom(self.name, self.primes - n)

    def __str__(self):
        return self.name + "'" * self.primes

    def __repr__(self):
        return f"Atom({str(self)!r})"


AtomLike = Union[Atom, str]


def as_atom(x: AtomLike) -> Atom:
    return x if isinstance(x, Atom) else Atom.parse(x)


def atom_set(xs) -> frozenset:
    """Coerce an Interpretation, Alphabet, string or iterable of atoms to a frozenset of atoms."""
    if isinstance(xs, (Interpretation, Alphabet)):
        return xs.atoms
    if isinstance(xs, str):
        xs = [s for s in xs.replace(",", " ").split()]
    return frozenset(as_atom(x) for x in xs)


class Rule(NamedTuple):
    """``head :- body``. Use :func:`rule_key` for the canonical order, not ``<``."""

    head: Atom
    body: frozenset = frozenset()

    @classmethod
    def make(cls, head: AtomLike, body: Iterable[AtomLike] = ()) -> "Rule":
        return cls(as_atom(head), frozenset(as_atom(b) for b in body))

    @property
    def size(self) -> int:
        return len(self.body)

    def is_fact(self) -> bool:
        return not self.body

    def is_tautology(self) -> bool:
        return len(self.body) == 1 and self.head in self.body

    def is_krom(self) -> bool:
        return len(self.body) <= 1

    def is_binary(self) -> bool:
        return len(self.body) <= 2

    def atoms(self) -> frozenset:
        return self.body | {self.head}

    def __str__(self):
        if not self.body:
            return f"{self.head}."
        return f"{self.head} :- {', '.join(str(b) for b in sorted(self.body))}."

    def __repr__(self):
        return f"Rule({str(self)!r})"


def rule_key(r: Rule):
    """Canonical rule order: by head, then by the sorted body (so a fact precedes rules with its head)."""
    return (r.head, tuple(sorted(r.body)))


@dataclass(frozen=True)
class Theory:
    """A finite set of rules."""

    rules: frozenset = frozenset()

    def __post_init__(self):
        if not isinstance(self.rules, frozenset):
            object.__setattr__(self, "rules", frozenset(self.rules))

    @classmethod
    def of(cls, *rules: Rule) -> "Theory":
        return cls(frozenset(rules))

    def __iter__(self) -> Iterator[Rule]:
        return iter(sorted(self.rules, key=rule_key))

    def __len__(self):
        return len(self.rules)

    def __contains__(self, r):
        return r in self.rules

    def __bool__(self):
        return bool(self.rules)

    def __le__(self, other: "Theory") -> bool:
        return self.rules <= other.rules

    def __lt__(self, other: "Theory") -> bool:
        return self.rules < other.rules

    def __ge__(self, other: "Theory") -> bool:
        return self.rules >= other.rules

    def __gt__(self, other: "Theory") -> bool:
        return self.rules > other.rules

    def __or__(self, other: "Theory") -> "Theory":
        return Theory(self.rules | as_theory(other).rules)

    def __mul__(self, other: "Theory") -> "Theory":
        from .algebra import compose

        return compose(self, other)

    def atoms(self) -> frozenset:
        out = set()
        for r in self.rules:
            out.add(r.head)
            out.update(r.body)
        return frozenset(out)

    def facts(self) -> "Theory":
        return Theory(frozenset(r for r in self.rules if not r.body))

    def proper(self) -> "Theory":
        return Theory(frozenset(r for r in self.rules if r.body))

    def is_interpretation(self) -> bool:
        return all(not r.body for r in self.rules)

    def __str__(self):
        return "{" + " ".join(str(r) for r in self) + "}"

    def __repr__(self):
        return f"Theory({str(self)!r})"


@dataclass(frozen=True)
class Interpretation:
    """A finite set of atoms; the same thing as a theory made only of facts."""

    atoms: frozenset = frozenset()

    def __post_init__(self):
        if not isinstance(self.atoms, frozenset) or not all(isinstance(a, Atom) for a in self.atoms):
            object.__setattr__(self, "atoms", atom_set(self.atoms))

    @classmethod
    def of(cls, *atoms: AtomLike) -> "Interpretation":
        return cls(frozenset(as_atom(a) for a in atoms))

    @classmethod
    def from_theory(cls, p: Theory) -> "Interpretation":
        if not p.is_interpretation():
            raise ValueError(f"theory has proper rules, not an interpretation: {p}")
        return cls(frozenset(r.head for r in p.rules))

    def as_theory(self) -> Theory:
        return Theory(frozenset(Rule(a, frozenset()) for a in self.atoms))

    def __iter__(self) -> Iterator[Atom]:
        return iter(sorted(self.atoms))

    def __len__(self):
        return len(self.atoms)

    def __contains__(self, a):
        return a in self.atoms

    def __le__(self, other) -> bool:
        return self.atoms <= atom_set(other)

    def __lt__(self, other) -> bool:
        return self.atoms < atom_set(other)

    def __or__(self, other) -> "Interpretation":
        return Interpretation(self.atoms | atom_set(other))

    def __and__(self, other) -> "Interpretation":
        return Interpretation(self.atoms & atom_set(other))

    def __sub__(self, other) -> "Interpretation":
        return Interpretation(self.atoms - atom_set(other))

    def __str__(self):
        return "{" + ", ".join(str(a) for a in self) + "}"

    def __repr__(self):
        return f"Interpretation({str(self)!r})"


@dataclass(frozen=True)
class Alphabet:
    """The ambient atom set for operations whose result depends on it."""

    atoms: frozenset = frozenset()

    def __post_init__(self):
        if not isinstance(self.atoms, frozenset) or not all(isinstance(a, Atom) for a in self.atoms):
            object.__setattr__(self, "atoms", atom_set(self.atoms))

    @classmethod
    def of(cls, *atoms: AtomLike) -> "Alphabet":
        return cls(frozenset(as_atom(a) for a in atoms))

    @classmethod
    def covering(cls, *values) -> "Alphabet":
        """The smallest alphabet holding every atom of the given theories or atom sets."""
        out = set()
        for v in values:
            out |= v.atoms() if isinstance(v, Theory) else atom_set(v)
        return cls(frozenset(out))

    def check(self, atoms, context: str = "") -> None:
        if isinstance(atoms, Theory):
            atoms = atoms.atoms()
        missing = atom_set(atoms) - self.atoms
        if missing:
            raise AlphabetError(missing, context)

    def primed(self, n: int = 1) -> "Alphabet":
        return Alphabet(frozenset(a.prime(n) for a in self.atoms))

    def __or__(self, other) -> "Alphabet":
        return Alphabet(self.atoms | atom_set(other))

    def __sub__(self, other) -> "Alphabet":
        return Alphabet(self.atoms - atom_set(other))

    def __iter__(self) -> Iterator[Atom]:
        return iter(sorted(self.atoms))

    def __len__(self):
        return len(self.atoms)

    def __contains__(self, a):
        return a in self.atoms

    def __str__(self):
        return "{" + ", ".join(str(a) for a in self) + "}"


def as_theory(x) -> Theory:
    """Theories pass through; interpretations become theories of facts."""
    if isinstance(x, Theory):
        return x
    if isinstance(x, Interpretation):
        return x.as_theory()
    raise TypeError(f"expected Theory or Interpretation, got {type(x).__name__}")


def partition_facts_proper(p: Theory) -> tuple[Interpretation, Theory]:
    facts = Interpretation(frozenset(r.head for r in p.rules if not r.body))
    return facts, p.proper()


def _check(p: Theory, alphabet, context: str) -> None:
    if alphabet is not None:
        (alphabet if isinstance(alphabet, Alphabet) else Alphabet(atom_set(alphabet))).check(p, context)


def heads(p: Theory, alphabet=None) -> Interpretation:
    """Head atoms of ``p``; when ``alphabet`` is given, ``p`` must lie inside it."""
    _check(p, alphabet, "heads")
    return Interpretation(frozenset(r.head for r in p.rules))


def bodies(p: Theory, alphabet=None) -> Interpretation:
    _check(p, alphabet, "bodies")
    out = set()
    for r in p.rules:
        out.update(r.body)
    return Interpretation(frozenset(out))


def reverse(p: Theory) -> Theory:
    """Keep the facts and flip every proper rule into ``b :- head`` for each body atom ``b``."""
    out = {r for r in p.rules if not r.body}
    for r in p.rules:
        for b in r.body:
            out.add(Rule(b, frozenset((r.head,))))
    return Theory(frozenset(out))


def depends_on(p: Theory, r: Theory) -> bool:
    """True iff some body atom of ``p`` is a head of ``r``."""
    return not bodies(p).atoms.isdisjoint(heads(r).atoms)


class TheoryClass(enum.Flag):
    NONE = 0
    KROM = enum.auto()
    BINARY = enum.auto()
    PROPER_ONLY = enum.auto()
    INTERPRETATION = enum.auto()
    SINGLE_RULE = enum.auto()


def classify(p: Theory) -> TheoryClass:
    flags = TheoryClass.NONE
    rules = p.rules
    if all(r.is_krom() for r in rules):
        flags |= TheoryClass.KROM
    if all(r.is_binary() for r in rules):
        flags |= TheoryClass.BINARY
    if all(r.body for r in rules):
        flags |= TheoryClass.PROPER_ONLY
    if all(not r.body for r in rules):
        flags |= TheoryClass.INTERPRETATION
    if sum(1 for r in rules if not r.is_tautology()) == 1:
        flags |= TheoryClass.SINGLE_RULE
    return flags
