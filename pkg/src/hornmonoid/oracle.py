"""Brute-force law checking over small alphabets.

Theories over a fixed alphabet are finite in number, so every law can be
checked exhaustively on tiny alphabets and by seeded sampling on larger
ones. Exhaustive sweeps over triples use a precomputed composition table
(every theory encoded as a bitmask over the rule universe) and numpy, so
the 16.8M triples over two atoms take seconds rather than hours.
"""

from __future__ import annotations

import itertools
import random
import dataclasses
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterator, Sequence

import numpy as np

from . import algebra, decomposition, semantics
from .core import (
    Alphabet,
    Interpretation,
    Rule,
    Theory,
    as_theory,
    atom_set,
    bodies,
    depends_on,
    heads,
    reverse,
    rule_key,
)
from .errors import DomainTooLargeError, UnknownLawError, UnsatisfiableParamsError

MAX_THEORIES = 2 ** 20
MAX_COUNTEREXAMPLES = 10


def _alphabet(a) -> Alphabet:
    return a if isinstance(a, Alphabet) else Alphabet(atom_set(a))


def standard_alphabet(n: int) -> Alphabet:
    """The first ``n`` letters ``a, b, c, ...``; beyond 26 atoms ``x26, x27, ...``."""
    names = [chr(ord("a") + k) if k < 26 else f"x{k}" for k in range(n)]
    return Alphabet.of(*names)


def rule_universe(alphabet, krom_only: bool = False, proper_only: bool = False, max_body: int | None = None) -> list[Rule]:
    """Every rule over the alphabet allowed by the constraints, in canonical order."""
    atoms = sorted(_alphabet(alphabet).atoms)
    limit = len(atoms) if max_body is None else max_body
    if krom_only:
        limit = min(limit, 1)
    low = 1 if proper_only else 0
    out = []
    for h in atoms:
        for k in range(low, limit + 1):
            for body in itertools.combinations(atoms, k):
                out.append(Rule(h, frozenset(body)))
    out.sort(key=rule_key)
    return out


def enumerate_theories(alphabet, krom_only: bool = False, proper_only: bool = False, max_body: int | None = None) -> Iterator[Theory]:
    """All theories over the alphabet, ordered by their bitmask over :func:`rule_universe`."""
    rules = rule_universe(alphabet, krom_only, proper_only, max_body)
    if 2 ** len(rules) > MAX_THEORIES:
        raise DomainTooLargeError(f"{2 ** len(rules)} theories exceeds the limit of {MAX_THEORIES}")
    for mask in range(2 ** len(rules)):
        yield Theory(frozenset(r for j, r in enumerate(rules) if mask >> j & 1))


def enumerate_interpretations(alphabet) -> Iterator[Interpretation]:
    atoms = sorted(_alphabet(alphabet).atoms)
    for mask in range(2 ** len(atoms)):
        yield Interpretation(frozenset(a for j, a in enumerate(atoms) if mask >> j & 1))


def enumerate_permutations(alphabet) -> Iterator[algebra.Permutation]:
    atoms = sorted(_alphabet(alphabet).atoms)
    for image in itertools.permutations(atoms):
        yield algebra.Permutation(tuple(zip(atoms, image)))


def literal_compose(p, r) -> Theory:
    """Composition straight from its definition.

    For each rule, try every subset of ``r`` with as many rules as the rule
    has body atoms and keep those whose heads are exactly the body. Slow,
    and deliberately independent of :func:`hornmonoid.algebra.compose`.
    """
    p, r = as_theory(p), as_theory(r)
    rs = list(r.rules)
    out = set()
    for rule in p.rules:
        for subset in itertools.combinations(rs, len(rule.body)):
            if {s.head for s in subset} == rule.body:
                body = frozenset(itertools.chain.from_iterable(s.body for s in subset))
                out.add(Rule(rule.head, body))
    return Theory(frozenset(out))


def operator_equal(p, r, alphabet) -> bool:
    """Compare the immediate consequence operators on every interpretation over the alphabet."""
    return all(semantics.tp(p, i) == semantics.tp(r, i) for i in enumerate_interpretations(alphabet))


def entails(i, p) -> bool:
    """``i`` satisfies every rule of ``p``."""
    i = atom_set(i)
    return all(r.head in i or not r.body <= i for r in as_theory(p).rules)


# ------------------------------------------------------------------ random


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_theory(seed, alphabet, rule_count: int = 4, max_body: int | None = None, acyclic: bool = False) -> Theory:
    """A random theory with exactly ``rule_count`` distinct rules.

    With ``acyclic`` the atoms are first put in a random order and every
    body atom is drawn from strictly earlier atoms, so the result always has a level
    mapping. ``seed`` is an int or a ``random.Random`` to draw from.
    """
    rng = _rng(seed)
    atoms = sorted(_alphabet(alphabet).atoms)
    limit = len(atoms) if max_body is None else max_body
    if acyclic:
        shuffled = atoms[:]
        rng.shuffle(shuffled)
        levels = {a: n for n, a in enumerate(shuffled)}
        candidates = []
        for h in atoms:
            lower = [b for b in atoms if levels[b] < levels[h]]
            for k in range(min(limit, len(lower)) + 1):
                candidates.extend(Rule(h, frozenset(c)) for c in itertools.combinations(lower, k))
    else:
        candidates = rule_universe(atoms, max_body=limit)
    if rule_count > len(candidates):
        raise UnsatisfiableParamsError(
            f"asked for {rule_count} rules but only {len(candidates)} are available"
        )
    return Theory(frozenset(rng.sample(candidates, rule_count)))


def random_interpretation(seed, alphabet) -> Interpretation:
    rng = _rng(seed)
    return Interpretation(frozenset(a for a in sorted(_alphabet(alphabet).atoms) if rng.random() < 0.5))


def random_permutation(seed, alphabet) -> algebra.Permutation:
    rng = _rng(seed)
    atoms = sorted(_alphabet(alphabet).atoms)
    image = atoms[:]
    rng.shuffle(image)
    return algebra.Permutation(tuple(zip(atoms, image)))


def _sample_theory(rng: random.Random, alphabet, max_rules: int = 8, krom_only: bool = False) -> Theory:
    universe = rule_universe(alphabet, krom_only=krom_only)
    k = rng.randint(0, min(max_rules, len(universe)))
    return Theory(frozenset(rng.sample(universe, k)))


# ----------------------------------------------------------- composition table


class CompositionTable:
    """All theories over a small alphabet with composition, union and the
    immediate consequence operator tabulated.

    Theory ``k`` holds rule ``j`` of :attr:`rules` iff bit ``j`` of ``k`` is
    set, so union is bitwise or. Interpretations are bitmasks over the
    sorted atoms.
    """

    def __init__(self, alphabet):
        self.alphabet = _alphabet(alphabet)
        self.atoms = sorted(self.alphabet.atoms)
        self.rules = rule_universe(self.alphabet)
        if 2 ** len(self.rules) > 2 ** 12:
            raise DomainTooLargeError("composition tables are limited to alphabets of at most two atoms")
        self.size = 2 ** len(self.rules)
        self._rule_bit = {r: 1 << j for j, r in enumerate(self.rules)}
        self.theories = list(enumerate_theories(self.alphabet))
        self.interpretations = list(enumerate_interpretations(self.alphabet))
        self._atom_bit = {a: 1 << j for j, a in enumerate(self.atoms)}

    def encode(self, p) -> int:
        return sum(self._rule_bit[r] for r in as_theory(p).rules)

    def encode_atoms(self, i) -> int:
        return sum(self._atom_bit[a] for a in atom_set(i))

    def decode(self, k: int) -> Theory:
        return self.theories[int(k)]

    @cached_property
    def compose(self) -> np.ndarray:
        n = self.size
        table = np.empty((n, n), dtype=np.uint16)
        for p in range(n):
            tp_ = self.theories[p]
            for r in range(n):
                table[p, r] = self.encode(algebra.compose(tp_, self.theories[r]))
        return table

    @cached_property
    def union(self) -> np.ndarray:
        ar = np.arange(self.size, dtype=np.uint16)
        return ar[:, None] | ar[None, :]

    @cached_property
    def tp(self) -> np.ndarray:
        out = np.empty((self.size, len(self.interpretations)), dtype=np.uint16)
        for p, t in enumerate(self.theories):
            for k, i in enumerate(self.interpretations):
                out[p, k] = self.encode_atoms(semantics.tp(t, i))
        return out

    @cached_property
    def head_masks(self) -> np.ndarray:
        return np.array([self.encode_atoms(heads(t)) for t in self.theories], dtype=np.uint16)

    @cached_property
    def body_masks(self) -> np.ndarray:
        return np.array([self.encode_atoms(bodies(t)) for t in self.theories], dtype=np.uint16)

    @cached_property
    def krom(self) -> np.ndarray:
        return np.array([k for k, t in enumerate(self.theories) if all(r.is_krom() for r in t.rules)])

    @cached_property
    def subsumption_class(self) -> np.ndarray:
        return np.array(
            [self.encode(semantics.subsumption_normal_form(t)) for t in self.theories], dtype=np.uint16
        )


_TABLES: dict = {}


def composition_table(alphabet) -> CompositionTable:
    a = _alphabet(alphabet)
    if a.atoms not in _TABLES:
        _TABLES[a.atoms] = CompositionTable(a)
    return _TABLES[a.atoms]


# ----------------------------------------------------------------- laws


@dataclass
class Counterexample:
    inputs: tuple
    lhs: object
    rhs: object

    def describe(self) -> str:
        from .textio import format_atoms, serialize_theory

        def show(x):
            if isinstance(x, Theory):
                return "{" + serialize_theory(x).replace("\n", " ").strip() + "}"
            if isinstance(x, Interpretation):
                return "{" + format_atoms(x) + "}"
            if isinstance(x, algebra.Permutation):
                return "[" + ", ".join(f"{k}->{v}" for k, v in x.pairs) + "]"
            if isinstance(x, tuple):
                return "(" + ", ".join(show(y) for y in x) + ")"
            return str(x)

        return f"inputs={show(self.inputs)} lhs={show(self.lhs)} rhs={show(self.rhs)}"


@dataclass
class LawReport:
    law_id: str
    domain_size: int
    mode: str
    cases_checked: int = 0
    violations: int = 0
    counterexamples: list = field(default_factory=list)
    expect_failure: bool = False

    @property
    def holds(self) -> bool:
        return not self.counterexamples

    @property
    def as_expected(self) -> bool:
        """Holding laws must hold; documented failures must produce a counterexample."""
        return self.holds != self.expect_failure

    def add(self, inputs, lhs, rhs) -> None:
        self.violations += 1
        if len(self.counterexamples) < MAX_COUNTEREXAMPLES:
            self.counterexamples.append(Counterexample(tuple(inputs), lhs, rhs))


@dataclass(frozen=True)
class Law:
    """A checkable identity.

    ``check(alphabet, *inputs)`` returns ``(lhs, rhs)`` to compare, or
    ``None`` when a side condition makes the case vacuous. ``domains``
    names what each input ranges over: ``theory``, ``krom``, ``interp`` or
    ``perm``. ``table_check`` optionally sweeps the whole domain of a
    two-atom alphabet at once through :class:`CompositionTable`.
    ``sampler(rng, alphabet)`` optionally replaces independent draws in
    sampled mode, for laws whose side condition random inputs rarely meet.
    """

    law_id: str
    description: str
    domains: tuple
    check: Callable
    table_check: Callable | None = None
    expect_failure: bool = False
    exhaustive_limit: int = 5_000_000
    sampler: Callable | None = None


LAWS: dict[str, Law] = {}


def law(law_id: str, description: str, domains: Sequence[str], expect_failure: bool = False, exhaustive_limit: int = 5_000_000):
    def register(fn):
        LAWS[law_id] = Law(law_id, description, tuple(domains), fn, None, expect_failure, exhaustive_limit)
        return fn

    return register


def table_sweep(law_id: str):
    def register(fn):
        LAWS[law_id] = dataclasses.replace(LAWS[law_id], table_check=fn)
        return fn

    return register


def law_sampler(law_id: str):
    def register(fn):
        LAWS[law_id] = dataclasses.replace(LAWS[law_id], sampler=fn)
        return fn

    return register


def _t(x) -> Theory:
    return as_theory(x)


@law("compose_oracle", "optimised composition equals the definition-literal subset enumeration", ("theory", "theory"))
def _(a, p, r):
    return algebra.compose(p, r), literal_compose(p, r)


@law("assoc", "(PQ)R = P(QR)", ("theory", "theory", "theory"))
def _(a, p, q, r):
    return algebra.compose(algebra.compose(p, q), r), algebra.compose(p, algebra.compose(q, r))


@law("assoc_inclusion", "(PQ)R ⊆ P(QR)", ("theory", "theory", "theory"))
def _(a, p, q, r):
    return algebra.compose(algebra.compose(p, q), r) <= algebra.compose(p, algebra.compose(q, r)), True


@law("assoc_subsumption", "(PQ)R and P(QR) are subsumption equivalent", ("theory", "theory", "theory"))
def _(a, p, q, r):
    lhs = algebra.compose(algebra.compose(p, q), r)
    rhs = algebra.compose(p, algebra.compose(q, r))
    return semantics.subsumption_normal_form(lhs), semantics.subsumption_normal_form(rhs)


@law("krom_assoc", "(KQ)R = K(QR) for Krom K", ("krom", "theory", "theory"))
def _(a, k, q, r):
    return algebra.compose(algebra.compose(k, q), r), algebra.compose(k, algebra.compose(q, r))


@law("unit", "1P = P = P1", ("theory",))
def _(a, p):
    one = algebra.unit(a)
    return (algebra.compose(one, p), algebra.compose(p, one)), (p, p)


@law("right_distributivity", "(P ∪ Q)R = PR ∪ QR", ("theory", "theory", "theory"))
def _(a, p, q, r):
    return algebra.compose(algebra.union(p, q), r), algebra.union(algebra.compose(p, r), algebra.compose(q, r))


@law("left_distributivity", "P(Q ∪ R) = PQ ∪ PR (fails for general P)", ("theory", "theory", "theory"), expect_failure=True)
def _(a, p, q, r):
    return algebra.compose(p, algebra.union(q, r)), algebra.union(algebra.compose(p, q), algebra.compose(p, r))


@law("krom_left_distributivity", "K(P ∪ R) = KP ∪ KR for Krom K", ("krom", "theory", "theory"))
def _(a, k, p, r):
    return algebra.compose(k, algebra.union(p, r)), algebra.union(algebra.compose(k, p), algebra.compose(k, r))


@law("monotonicity", "P ⊆ P' implies PR ⊆ P'R and RP ⊆ RP'", ("theory", "theory", "theory"))
def _(a, p, p2, r):
    if not p <= p2:
        return None
    ok = algebra.compose(p, r) <= algebra.compose(p2, r) and algebra.compose(r, p) <= algebra.compose(r, p2)
    return ok, True


@law("facts_preserved", "facts(P) ⊆ facts(PR)", ("theory", "theory"))
def _(a, p, r):
    return p.facts() <= algebra.compose(p, r).facts(), True


@law("left_zero", "IP = I for every interpretation I", ("interp", "theory"))
def _(a, i, p):
    return algebra.compose(i, p), i.as_theory()


@law("ideal", "PI is an interpretation", ("theory", "interp"))
def _(a, p, i):
    return algebra.compose(p, i).is_interpretation(), True


@law("supported_commute", "PI = IP iff I is a supported model of P", ("theory", "interp"))
def _(a, p, i):
    return semantics.commutes(p, i), semantics.check_model(p, i) == semantics.ModelStatus.SUPPORTED_MODEL


@law("model_characterization", "I is a model iff T_P(I) ⊆ I, checked against direct entailment", ("theory", "interp"))
def _(a, p, i):
    return semantics.check_model(p, i) >= semantics.ModelStatus.MODEL, entails(i, p)


@law("tp_composition", "T_P(I) = PI", ("theory", "interp"))
def _(a, p, i):
    return semantics.tp(p, i).as_theory(), algebra.compose(p, i)


@law("tp_homomorphism", "T_{PR} = T_P ∘ T_R", ("theory", "theory", "interp"))
def _(a, p, r, i):
    return semantics.tp(algebra.compose(p, r), i), semantics.tp(p, semantics.tp(r, i))


@law("tp_union", "T_{P ∪ R} = T_P ∪ T_R", ("theory", "theory", "interp"))
def _(a, p, r, i):
    return semantics.tp(algebra.union(p, r), i), semantics.tp(p, i) | semantics.tp(r, i)


@law("lm_omega", "LM(P) by iteration equals P^ω", ("theory",))
def _(a, p):
    return semantics.least_model(p, "iterate"), algebra.omega(p, a)


@law("least_model_minimal", "LM(P) is a model contained in every model", ("theory",))
def _(a, p):
    lm = semantics.least_model(p)
    ok = entails(lm, p) and all(lm <= i for i in enumerate_interpretations(a) if entails(i, p))
    return ok, True


@law("idempotence", "PP = P iff the two-condition characterization holds", ("theory",))
def _(a, p):
    return algebra.is_idempotent(p), algebra.idempotence_conditions(p)


@law("reduct_left", "left reduct equals 1^I P", ("theory", "interp"))
def _(a, p, i):
    return algebra.reduct(p, i, "left"), algebra.compose(algebra.unit(i), p)


@law("reduct_right", "right reduct equals P 1^I", ("theory", "interp"))
def _(a, p, i):
    return algebra.reduct(p, i, "right"), algebra.compose(p, algebra.unit(i))


@law("restriction", "P|_I equals 1^I P 1^I", ("theory", "interp"))
def _(a, p, i):
    one = algebra.unit(i)
    return algebra.reduct(p, i, "both"), algebra.compose(algebra.compose(one, p), one)


@law("unit_meet", "1^I 1^J = 1^{I ∩ J}", ("interp", "interp"))
def _(a, i, j):
    return algebra.compose(algebra.unit(i), algebra.unit(j)), algebra.unit(i & j)


@law("unit_join", "1^I ∪ 1^J = 1^{I ∪ J}", ("interp", "interp"))
def _(a, i, j):
    return algebra.union(algebra.unit(i), algebra.unit(j)), algebra.unit(i | j)


@law("compose_simplification", "PR = P^{head(R)} ∘ ^{body(P)}R", ("theory", "theory"))
def _(a, p, r):
    simplified = algebra.compose(
        algebra.reduct(p, heads(r), "right"), algebra.reduct(r, bodies(p), "left")
    )
    return algebra.compose(p, r), simplified


@law("ominus", "P I^⊖ removes I from every body", ("theory", "interp"))
def _(a, p, i):
    want = Theory(frozenset(Rule(r.head, r.body - i.atoms) for r in p.rules))
    return algebra.compose(p, algebra.ominus(i, a)), want


@law("oplus", "P I^⊕ adds I to every proper body", ("theory", "interp"))
def _(a, p, i):
    want = algebra.union(p.facts(), Theory(frozenset(Rule(r.head, r.body | i.atoms) for r in p.proper().rules)))
    return algebra.compose(p, algebra.oplus(i, a)), want


@law("oplus_ominus", "I^⊕ I^⊖ = I^⊖ and I^⊕ I = I", ("interp",))
def _(a, i):
    om = algebra.ominus(i, a)
    op = algebra.oplus(i, a)
    return (algebra.compose(op, om), algebra.compose(op, i)), (om, i.as_theory())


@law("heads_bodies", "head(P) = PA and body(P) = proper(P)^rev A", ("theory",))
def _(a, p):
    return (heads(p, a), bodies(p, a)), (
        algebra.heads_via_composition(p, a),
        algebra.bodies_via_composition(p, a),
    )


@law("heads_shrink", "head(PR) ⊆ head(P) and body(PR) ⊆ body(R)", ("theory", "theory"))
def _(a, p, r):
    pr = algebra.compose(p, r)
    return heads(pr) <= heads(p) and bodies(pr) <= bodies(r), True


@law("nondependence", "P(Q ∪ R) = PQ when P does not depend on R", ("theory", "theory", "theory"))
def _(a, p, q, r):
    if depends_on(p, r):
        return None
    return algebra.compose(p, algebra.union(q, r)), algebra.compose(p, q)


@law("nondependent_union", "P ∪ R = cl_{head(R)}(P) cl_{body(P)}(R) when P does not depend on R", ("theory", "theory"))
def _(a, p, r):
    if depends_on(p, r):
        return None
    return algebra.union(p, r), algebra.compose(algebra.closure(p, heads(r)), algebra.closure(r, bodies(p)))


@law("closure_nesting", "cl_A(cl_B(P)) = cl_{A ∪ B}(P)", ("theory", "interp", "interp"))
def _(a, p, i, j):
    return algebra.closure(algebra.closure(p, j), i), algebra.closure(p, i | j)


@law("closure_equivalence", "cl_I(P) is equivalent to P", ("theory", "interp"))
def _(a, p, i):
    return semantics.equivalent(p, algebra.closure(p, i)), True


@law("union_decomposition", "P ∪ R = cl_{head(R)}(P[A←A']) cl_{body(P[A←A'])}(R) cl_A([A'←A])", ("theory", "theory"))
def _(a, p, r):
    f1, f2, f3 = decomposition.decompose_union(p, r, a)
    return algebra.compose(algebra.compose(f1, f2), f3), algebra.union(p, r)


@law("permutation_group", "π π^rev = 1 = π^rev π", ("perm",))
def _(a, pi):
    t = algebra.permutation_theory(pi)
    one = algebra.unit(pi.alphabet)
    return (algebra.compose(t, reverse(t)), algebra.compose(reverse(t), t)), (one, one)


@law("rename", "π P π^rev renames every atom", ("perm", "theory"))
def _(a, pi, p):
    t = algebra.permutation_theory(pi)
    return algebra.compose(algebra.compose(t, p), reverse(t)), algebra.rename(p, pi)


@law("fact_separation", "P = facts(P)^* proper(P)", ("theory",))
def _(a, p):
    return p, algebra.compose(algebra.star(p.facts(), a), p.proper())


@law("proper_union", "proper(P ∪ R) = proper(P) ∪ proper(R)", ("theory", "theory"))
def _(a, p, r):
    return algebra.union(p, r).proper(), algebra.union(p.proper(), r.proper())


@law("proper_composition", "proper(PR) = proper(P) proper(R) (fails in general)", ("theory", "theory"), expect_failure=True)
def _(a, p, r):
    return algebra.compose(p, r).proper(), algebra.compose(p.proper(), r.proper())


@law("subsumption_decision", "normal-form comparison agrees with operator equality", ("theory", "theory"))
def _(a, p, r):
    return semantics.subsumption_equivalent(p, r), operator_equal(p, r, a)


@law(
    "subsumption_congruence",
    "P ≡ R implies QPS ≡ QRS under subsumption equivalence",
    ("theory", "theory", "theory", "theory"),
)
def _(a, q, p, r, s):
    if not semantics.subsumption_equivalent(p, r):
        return None
    lhs = algebra.compose(algebra.compose(q, p), s)
    rhs = algebra.compose(algebra.compose(q, r), s)
    return operator_equal(lhs, rhs, a), True


@law_sampler("subsumption_congruence")
def _(rng: random.Random, a: Alphabet):
    q, p, s = (_sample_theory(rng, a) for _ in range(3))
    # R keeps the normal form of P and adds weakened copies of its rules
    atoms = sorted(a.atoms)
    extra = [
        Rule(r.head, r.body | frozenset(rng.sample(atoms, rng.randint(1, len(atoms)))))
        for r in p.rules
        if rng.random() < 0.5
    ]
    r = Theory(semantics.subsumption_normal_form(p).rules | frozenset(extra))
    return q, p, r, s


# -------------------------------------------------------- table sweeps
# Each sweep returns (cases_checked, bad) where ``bad`` is an (n, arity)
# array of table indices of violating tuples, in lexicographic order.


def _bad(ok: np.ndarray, applicable: np.ndarray | None = None):
    if applicable is None:
        return int(ok.size), np.argwhere(~ok)
    applicable = np.broadcast_to(applicable, ok.shape)
    return int(applicable.sum()), np.argwhere(applicable & ~ok)


@table_sweep("assoc")
def _(t: CompositionTable):
    c = t.compose
    return _bad(c[c] == c[:, c])


@table_sweep("assoc_inclusion")
def _(t: CompositionTable):
    c = t.compose
    return _bad((c[c] & ~c[:, c]) == 0)


@table_sweep("assoc_subsumption")
def _(t: CompositionTable):
    c, nf = t.compose, t.subsumption_class
    return _bad(nf[c[c]] == nf[c[:, c]])


@table_sweep("krom_assoc")
def _(t: CompositionTable):
    c = t.compose
    ck = c[t.krom]
    cases, bad = _bad(c[ck] == ck[:, c])
    if len(bad):
        bad[:, 0] = t.krom[bad[:, 0]]
    return cases, bad


@table_sweep("right_distributivity")
def _(t: CompositionTable):
    c, u = t.compose, t.union
    return _bad(c[u] == (c[:, None, :] | c[None, :, :]))


@table_sweep("left_distributivity")
def _(t: CompositionTable):
    c, u = t.compose, t.union
    return _bad(c[:, u] == (c[:, :, None] | c[:, None, :]))


@table_sweep("krom_left_distributivity")
def _(t: CompositionTable):
    c, u = t.compose, t.union
    ck = c[t.krom]
    cases, bad = _bad(ck[:, u] == (ck[:, :, None] | ck[:, None, :]))
    if len(bad):
        bad[:, 0] = t.krom[bad[:, 0]]
    return cases, bad


@table_sweep("monotonicity")
def _(t: CompositionTable):
    c = t.compose
    ar = np.arange(t.size, dtype=np.uint16)
    sub = (ar[:, None] & ~ar[None, :]) == 0  # sub[p, p2]: p ⊆ p2
    right = (c[:, None, :] & ~c[None, :, :]) == 0  # pr ⊆ p2 r
    left = (c.T[:, None, :] & ~c.T[None, :, :]) == 0  # rp ⊆ rp2, indexed [p, p2, r]
    return _bad(right & left, sub[:, :, None])


@table_sweep("tp_homomorphism")
def _(t: CompositionTable):
    c, tp = t.compose, t.tp
    return _bad(tp[c] == tp[:, tp])


@table_sweep("tp_union")
def _(t: CompositionTable):
    tp, u = t.tp, t.union
    return _bad(tp[u] == (tp[:, None, :] | tp[None, :, :]))


@table_sweep("nondependence")
def _(t: CompositionTable):
    c, u = t.compose, t.union
    independent = (t.body_masks[:, None] & t.head_masks[None, :]) == 0  # [p, r]
    return _bad(c[:, u] == c[:, :, None], independent[:, None, :])


@table_sweep("subsumption_congruence")
def _(t: CompositionTable):
    # Equal operators on every class member for each (q, s) is the 4-ary law
    # restricted to pairs (p, rep(p)); transitivity covers the other pairs.
    c, nf = t.compose, t.subsumption_class
    rep = np.empty(t.size, dtype=np.int64)
    first: dict = {}
    for k, cls in enumerate(nf.tolist()):
        rep[k] = first.setdefault(cls, k)
    class_sizes = np.bincount(rep, minlength=t.size)
    cases = t.size * t.size * int((class_sizes.astype(np.int64) ** 2).sum())
    bad = []
    for q in range(t.size):
        qps = nf[c[c[q]]]  # [p, s]
        for p, s in np.argwhere(qps != qps[rep]):
            bad.append((q, p, rep[p], s))
    return cases, np.array(bad, dtype=np.int64).reshape(-1, 4)


# ----------------------------------------------------------------- runner


def _domain_values(kind: str, alphabet: Alphabet) -> list:
    if kind == "theory":
        return list(enumerate_theories(alphabet))
    if kind == "krom":
        return list(enumerate_theories(alphabet, krom_only=True))
    if kind == "interp":
        return list(enumerate_interpretations(alphabet))
    if kind == "perm":
        return list(enumerate_permutations(alphabet))
    raise ValueError(f"unknown domain {kind!r}")


def _sample_value(kind: str, rng: random.Random, alphabet: Alphabet):
    if kind == "theory":
        return _sample_theory(rng, alphabet)
    if kind == "krom":
        return _sample_theory(rng, alphabet, krom_only=True)
    if kind == "interp":
        return random_interpretation(rng, alphabet)
    if kind == "perm":
        return random_permutation(rng, alphabet)
    raise ValueError(f"unknown domain {kind!r}")


def _run_case(lw: Law, report: LawReport, alphabet: Alphabet, inputs) -> None:
    result = lw.check(alphabet, *inputs)
    if result is None:
        return
    report.cases_checked += 1
    lhs, rhs = result
    if lhs != rhs:
        report.add(inputs, lhs, rhs)


def get_law(law_id: str) -> Law:
    try:
        return LAWS[law_id]
    except KeyError:
        raise UnknownLawError(f"unknown law {law_id!r}; known: {', '.join(sorted(LAWS))}") from None


def exhaustive_case_count(law_id: str, alphabet) -> int:
    a = _alphabet(alphabet)
    total = 1
    for kind in get_law(law_id).domains:
        if kind in ("theory", "krom"):
            n = len(rule_universe(a, krom_only=kind == "krom"))
            if 2 ** n > MAX_THEORIES:
                raise DomainTooLargeError(f"{2 ** n} theories exceeds the limit of {MAX_THEORIES}")
            total *= 2 ** n
        elif kind == "interp":
            total *= 2 ** len(a)
        else:
            total *= len(list(itertools.permutations(range(len(a)))))
    return total


def check_law(law_id: str, alphabet, mode: str = "exhaustive", seed: int = 0, count: int = 1000) -> LawReport:
    """Check one law on every input tuple (``exhaustive``) or on ``count`` seeded samples (``sampled``)."""
    lw = get_law(law_id)
    a = _alphabet(alphabet)
    report = LawReport(law_id, len(a), mode, expect_failure=lw.expect_failure)
    if mode == "exhaustive":
        total = exhaustive_case_count(law_id, a)
        if lw.table_check is not None and len(rule_universe(a)) <= 12:
            table = composition_table(a)
            cases, bad = lw.table_check(table)
            report.cases_checked = cases
            kinds = lw.domains
            for idx in bad[:MAX_COUNTEREXAMPLES]:
                inputs = tuple(
                    table.interpretations[int(k)] if kind == "interp" else table.decode(k)
                    for kind, k in zip(kinds, idx)
                )
                lhs, rhs = lw.check(a, *inputs)
                report.add(inputs, lhs, rhs)
            report.violations = len(bad)
            return report
        if total > lw.exhaustive_limit:
            raise DomainTooLargeError(
                f"{law_id}: {total} cases exceeds the exhaustive limit of {lw.exhaustive_limit}; use sampled mode"
            )
        values = [_domain_values(kind, a) for kind in lw.domains]
        for inputs in itertools.product(*values):
            _run_case(lw, report, a, inputs)
        return report
    if mode == "sampled":
        rng = random.Random(seed)
        for _ in range(count):
            if lw.sampler is not None:
                inputs = lw.sampler(rng, a)
            else:
                inputs = tuple(_sample_value(kind, rng, a) for kind in lw.domains)
            _run_case(lw, report, a, inputs)
        return report
    raise ValueError(f"mode must be exhaustive or sampled, not {mode!r}")


def check_all(alphabet, mode: str = "exhaustive", seed: int = 0, count: int = 1000, law_ids=None):
    """Run several laws; laws too large for an exhaustive sweep come back as ``(law_id, error)``."""
    out = []
    for law_id in law_ids or sorted(LAWS):
        try:
            out.append(check_law(law_id, alphabet, mode, seed, count))
        except DomainTooLargeError as exc:
            out.append((law_id, exc))
    return out
