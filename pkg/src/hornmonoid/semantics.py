"""Least-model semantics and the immediate consequence operator."""

from __future__ import annotations

import enum
import os

from .algebra import compose, omega
from .core import Interpretation, Theory, as_theory, atom_set

# Set HORNMONOID_DEBUG=1 to check tp against composition on every call.
DEBUG_CROSSCHECK = os.environ.get("HORNMONOID_DEBUG", "") not in ("", "0")


class ModelStatus(enum.IntEnum):
    NOT_MODEL = 0
    MODEL = 1
    SUPPORTED_MODEL = 2


def tp(p, i) -> Interpretation:
    """Heads of the rules of ``p`` whose bodies hold in ``i``."""
    p = as_theory(p)
    i = atom_set(i)
    out = Interpretation(frozenset(r.head for r in p.rules if r.body <= i))
    if DEBUG_CROSSCHECK:
        via = Interpretation.from_theory(compose(p, Interpretation(i)))
        assert via == out, (p, i, out, via)
    return out


def check_model(p, i) -> ModelStatus:
    i = Interpretation(atom_set(i))
    t = tp(p, i)
    if t == i:
        return ModelStatus.SUPPORTED_MODEL
    if t.atoms <= i.atoms:
        return ModelStatus.MODEL
    return ModelStatus.NOT_MODEL


def least_model(p, strategy: str = "iterate") -> Interpretation:
    """Least model by bottom-up iteration of :func:`tp` or as ``omega(p)``."""
    p = as_theory(p)
    if strategy == "omega":
        return omega(p, p.atoms())
    if strategy != "iterate":
        raise ValueError(f"unknown strategy {strategy!r}")
    current = Interpretation()
    for _ in range(len(p.atoms()) + 1):
        nxt = tp(p, current)
        if nxt == current:
            return current
        current = nxt
    raise RuntimeError(f"least model iteration did not stabilise for {p}")


def equivalent(p, r) -> bool:
    return least_model(p) == least_model(r)


def subsumption_normal_form(p) -> Theory:
    """Drop every rule whose body strictly contains the body of another rule with the same head."""
    p = as_theory(p)
    by_head: dict = {}
    for r in p.rules:
        by_head.setdefault(r.head, []).append(r.body)
    keep = [
        r
        for r in p.rules
        if not any(other < r.body for other in by_head[r.head])
    ]
    return Theory(frozenset(keep))


def subsumption_equivalent(p, r) -> bool:
    """Same immediate consequence operator, decided through normal forms."""
    return subsumption_normal_form(p) == subsumption_normal_form(r)


def commutes(p, i) -> bool:
    i = Interpretation(atom_set(i))
    return compose(p, i) == compose(i, p)
