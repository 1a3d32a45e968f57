"""Sequential composition and the operations built from it.

Theories form a monoid under :func:`compose` with :func:`unit` as neutral
element, and an idempotent near-semiring together with :func:`union`.
Operations whose result depends on the ambient alphabet (units, powers,
star, the body-editing combinators) take it as an explicit argument.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import product
from typing import Mapping

from .core import (
    Alphabet,
    Atom,
    Interpretation,
    Rule,
    Theory,
    as_atom,
    as_theory,
    atom_set,
    reverse,
)
from .errors import AlphabetError, PrimeCollisionError

_EMPTY = frozenset()


def _alphabet(a) -> Alphabet:
    return a if isinstance(a, Alphabet) else Alphabet(atom_set(a))


def compose(p, r) -> Theory:
    """Sequential composition ``p ∘ r``.

    Each rule of ``p`` has every body atom resolved against one rule of ``r``
    with that head; the new body is the union of the chosen bodies. A rule
    with an unresolvable body atom disappears and facts pass through.
    """
    p = as_theory(p)
    r = as_theory(r)
    by_head = defaultdict(list)
    for s in r.rules:
        by_head[s.head].append(s.body)
    out = set()
    for rule in p.rules:
        if not rule.body:
            out.add(rule)
            continue
        choices = []
        for b in rule.body:
            options = by_head.get(b)
            if not options:
                break
            choices.append(options)
        else:
            head = rule.head
            for picked in product(*choices):
                out.add(Rule(head, _EMPTY.union(*picked)))
    return Theory(frozenset(out))


def compose_all(theories, alphabet=None) -> Theory:
    """Left-to-right product; the empty product is ``unit(alphabet)``."""
    theories = list(theories)
    if not theories:
        if alphabet is None:
            raise ValueError("empty product needs an alphabet")
        return unit(alphabet)
    acc = as_theory(theories[0])
    for t in theories[1:]:
        acc = compose(acc, t)
    return acc


def union(*theories) -> Theory:
    out = set()
    for t in theories:
        out |= as_theory(t).rules
    return Theory(frozenset(out))


def unit(atoms) -> Theory:
    """All tautologies ``a :- a`` over the given atoms."""
    return Theory(frozenset(Rule(a, frozenset((a,))) for a in atom_set(atoms)))


def reduct(p, atoms, side: str = "both") -> Theory:
    """``left`` keeps rules with head in the set, ``right`` rules with body inside it, ``both`` does both."""
    p = as_theory(p)
    i = atom_set(atoms)
    if side == "left":
        keep = (r for r in p.rules if r.head in i)
    elif side == "right":
        keep = (r for r in p.rules if r.body <= i)
    elif side == "both":
        keep = (r for r in p.rules if r.head in i and r.body <= i)
    else:
        raise ValueError(f"side must be left, right or both, not {side!r}")
    return Theory(frozenset(keep))


def closure(p, atoms) -> Theory:
    """Pad ``p`` with the tautologies over ``atoms``."""
    return union(unit(atoms), p)


def ominus(i, alphabet) -> Theory:
    """Right factor deleting the atoms of ``i`` from every rule body."""
    a = _alphabet(alphabet)
    i = atom_set(i)
    a.check(i, "ominus")
    return union(unit(a.atoms - i), Interpretation(i))


def oplus(i, alphabet) -> Theory:
    """Right factor adding the atoms of ``i`` to every proper rule body."""
    a = _alphabet(alphabet)
    i = atom_set(i)
    a.check(i, "oplus")
    return Theory(frozenset(Rule(x, i | {x}) for x in a.atoms))


def heads_via_composition(p, alphabet) -> Interpretation:
    a = _alphabet(alphabet)
    a.check(as_theory(p), "heads")
    return Interpretation.from_theory(compose(p, Interpretation(a.atoms)))


def bodies_via_composition(p, alphabet) -> Interpretation:
    a = _alphabet(alphabet)
    a.check(as_theory(p), "bodies")
    return Interpretation.from_theory(compose(reverse(as_theory(p).proper()), Interpretation(a.atoms)))


@dataclass(frozen=True)
class Permutation:
    """A bijection of a finite alphabet, stored as sorted ``(atom, image)`` pairs."""

    pairs: tuple

    def __post_init__(self):
        pairs = tuple(sorted((as_atom(k), as_atom(v)) for k, v in dict(self.pairs).items()))
        if len(pairs) != len(self.pairs) or {k for k, _ in pairs} != {v for _, v in pairs}:
            raise ValueError("not a bijection on its alphabet")
        object.__setattr__(self, "pairs", pairs)

    @classmethod
    def from_mapping(cls, mapping: Mapping) -> "Permutation":
        return cls(tuple(mapping.items()))

    @classmethod
    def from_cycles(cls, cycles: str, alphabet) -> "Permutation":
        """Cycle notation such as ``"(a b c)(d e)"``; atoms of ``alphabet`` not mentioned are fixed."""
        mapping = {a: a for a in atom_set(alphabet)}
        for chunk in cycles.replace(")", "(").split("("):
            cyc = [as_atom(x) for x in chunk.split()]
            for x, y in zip(cyc, cyc[1:] + cyc[:1]):
                if x not in mapping:
                    raise AlphabetError({x}, "permutation")
                mapping[x] = y
        return cls.from_mapping(mapping)

    @property
    def alphabet(self) -> Alphabet:
        return Alphabet(frozenset(k for k, _ in self.pairs))

    def __call__(self, a: Atom) -> Atom:
        return dict(self.pairs)[a]

    def inverse(self) -> "Permutation":
        return Permutation(tuple((v, k) for k, v in self.pairs))


def permutation_theory(p: Permutation) -> Theory:
    """``{p(a) :- a}`` over the permutation's alphabet."""
    return Theory(frozenset(Rule(v, frozenset((k,))) for k, v in p.pairs))


def rename(theory, p: Permutation) -> Theory:
    """Apply ``p`` to every atom of ``theory``.

    Agrees with ``perm ∘ theory ∘ reverse(perm)`` for ``perm = permutation_theory(p)``.
    """
    theory = as_theory(theory)
    p.alphabet.check(theory, "rename")
    m = dict(p.pairs)
    return Theory(frozenset(Rule(m[r.head], frozenset(m[b] for b in r.body)) for r in theory.rules))


def power(p, n: int, alphabet) -> Theory:
    """``p`` composed with itself ``n`` times; ``power(p, 0, A)`` is ``unit(A)``."""
    if n < 0:
        raise ValueError("power must be non-negative")
    a = _alphabet(alphabet)
    p = as_theory(p)
    a.check(p, "power")
    acc = unit(a.atoms)
    for _ in range(n):
        acc = compose(acc, p)
    return acc


def star(p, alphabet) -> Theory:
    """Union of all powers of ``p``, from ``unit(alphabet)`` onwards.

    Stops at the first power already contained in the running union: by
    monotonicity of composition no later power can add a rule.
    """
    a = _alphabet(alphabet)
    p = as_theory(p)
    a.check(p, "star")
    acc = unit(a.atoms)
    pk = acc
    bound = len(a) * 2 ** len(a) + 1
    for _ in range(bound + 1):
        pk = compose(pk, p)
        if pk <= acc:
            return acc
        acc = union(acc, pk)
    raise RuntimeError("star did not stabilise within the rule-universe bound")


def plus(p, alphabet) -> Theory:
    return compose(star(p, alphabet), p)


def omega(p, alphabet) -> Interpretation:
    return Interpretation(frozenset(r.head for r in plus(p, alphabet).rules if not r.body))


def is_idempotent(p) -> bool:
    p = as_theory(p)
    return compose(p, p) == p


def idempotence_conditions(p) -> bool:
    """The two-part test: proper rules applied to the facts yield only facts,
    and ``proper(proper(p) ∘ p) == proper(p)``."""
    p = as_theory(p)
    facts, prop = p.facts(), p.proper()
    return compose(prop, facts) <= facts and compose(prop, p).proper() == prop


def prime_bridge(i, alphabet, direction: str = "up") -> Theory:
    """Bridge between atoms and their primed copies.

    ``up`` gives ``{a :- a'}`` for ``a`` in ``i``, ``down`` gives ``{a' :- a}``;
    both are padded with the tautologies over ``alphabet - i``.
    """
    a = _alphabet(alphabet)
    i = atom_set(i)
    a.check(i, "prime_bridge")
    clash = sorted(x.prime() for x in i if x.prime() in a.atoms)
    if clash:
        raise PrimeCollisionError("alphabet already contains " + ", ".join(map(str, clash)))
    if direction == "up":
        core = (Rule(x, frozenset((x.prime(),))) for x in i)
    elif direction == "down":
        core = (Rule(x.prime(), frozenset((x,))) for x in i)
    else:
        raise ValueError(f"direction must be up or down, not {direction!r}")
    return union(Theory(frozenset(core)), unit(a.atoms - i))
