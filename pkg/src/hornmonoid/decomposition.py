"""Sequential decompositions of theories.

Acyclic theories factor into single-rule closures, long rules factor into
binary theories, and any union ``p ∪ r`` factors into three compositions
through a primed copy of the alphabet.
"""

from __future__ import annotations

import graphlib
from typing import Sequence

from .algebra import closure, compose, prime_bridge
from .core import Alphabet, Atom, Interpretation, Rule, Theory, as_theory, atom_set, bodies, heads, rule_key
from .errors import CyclicError

LevelMapping = dict  # Atom -> int


def level_mapping(p) -> LevelMapping:
    """Minimal level mapping by longest-path layering.

    Every head sits strictly above all of its body atoms; unconstrained
    atoms get level 0. Raises :class:`CyclicError` with a witness cycle,
    rotated to start at its smallest atom.
    """
    p = as_theory(p)
    graph = {a: set() for a in sorted(p.atoms())}
    for r in p.rules:
        graph[r.head].update(r.body)
    try:
        order = list(graphlib.TopologicalSorter(graph).static_order())
    except graphlib.CycleError as exc:
        cycle = list(exc.args[1][:-1])
        start = cycle.index(min(cycle))
        # each atom is a body atom of a rule headed by the next one
        cycle = cycle[start:] + cycle[:start]
        raise CyclicError(cycle) from None
    levels = {}
    for a in order:
        levels[a] = max((levels[b] + 1 for b in graph[a]), default=0)
    return levels


def is_level_mapping(p, levels: LevelMapping) -> bool:
    return all(
        all(levels[r.head] > levels[b] for b in r.body) for r in as_theory(p).rules
    )


def is_acyclic(p) -> bool:
    try:
        level_mapping(p)
    except CyclicError:
        return False
    return True


def order_rules(p, levels: LevelMapping | None = None) -> list[Rule]:
    """Rules by head level, ties broken by the canonical rule order."""
    p = as_theory(p)
    if levels is None:
        levels = level_mapping(p)
    return sorted(p.rules, key=lambda r: (levels[r.head], rule_key(r)))


def bh(i: int, rules: Sequence[Rule]) -> Interpretation:
    """Bodies of the rules before position ``i`` plus heads of the rules after it (1-based)."""
    if not 1 <= i <= len(rules):
        raise IndexError(f"bh index {i} out of range 1..{len(rules)}")
    out = set()
    for r in rules[: i - 1]:
        out |= r.body
    out.update(r.head for r in rules[i:])
    return Interpretation(frozenset(out))


def decompose_acyclic(p, order: Sequence[Rule] | None = None) -> list[Theory]:
    """Single-rule factors whose left-to-right product is ``p``.

    ``order`` may fix the total rule order; it must be non-decreasing in
    the level of the rule heads.
    """
    p = as_theory(p)
    levels = level_mapping(p)
    if order is None:
        rules = order_rules(p, levels)
    else:
        rules = list(order)
        if set(rules) != p.rules or len(rules) != len(p.rules):
            raise ValueError("order must list every rule of the theory exactly once")
        hl = [levels[r.head] for r in rules]
        if any(x > y for x, y in zip(hl, hl[1:])):
            raise ValueError("order is not compatible with the level mapping")
    if len(rules) <= 1:
        return [p]
    return [closure(Theory.of(r), bh(i, rules)) for i, r in enumerate(rules, start=1)]


def decompose_rule_binary(r: Rule) -> list[Theory]:
    """Binary theories whose product is ``{r}``; rules with at most two body atoms come back as ``[{r}]``."""
    body = sorted(r.body)
    k = len(body)
    if k < 3:
        return [Theory.of(r)]
    factors = [Theory.of(Rule(r.head, frozenset(body[:2])))]
    for i in range(2, k):
        # body indices are 1-based in a_1..a_k; body[i - 1] is a_i
        ai, nxt = body[i - 1], body[i]
        factors.append(closure(Theory.of(Rule(ai, frozenset((ai, nxt)))), body[: i - 1]))
    return factors


def elevator(seq) -> Theory:
    """``{a1.} ∪ {a_i :- a_(i-1)}`` for a sequence of distinct atoms."""
    seq = [a if isinstance(a, Atom) else Atom.parse(a) for a in seq]
    if not seq:
        raise ValueError("elevator needs at least one atom")
    if len(set(seq)) != len(seq):
        raise ValueError("elevator atoms must be distinct")
    rules = [Rule(seq[0], frozenset())]
    rules += [Rule(b, frozenset((a,))) for a, b in zip(seq, seq[1:])]
    return Theory(frozenset(rules))


def decompose_union(p, r, alphabet) -> tuple[Theory, Theory, Theory]:
    """Three factors whose product is ``p ∪ r``.

    ``p``'s bodies move to primed copies so it stops depending on ``r``,
    the two parts are composed side by side, and a final bridge maps the
    primed atoms back.
    """
    p = as_theory(p)
    r = as_theory(r)
    a = alphabet if isinstance(alphabet, Alphabet) else Alphabet(atom_set(alphabet))
    a.check(p, "decompose_union")
    a.check(r, "decompose_union")
    up = prime_bridge(a.atoms, a, "up")
    down = prime_bridge(a.atoms, a, "down")
    p_primed = compose(p, up)
    f1 = closure(p_primed, heads(r))
    f2 = closure(r, bodies(p_primed))
    f3 = closure(down, a.atoms)
    return f1, f2, f3
