"""Sequential composition of propositional Horn theories."""

from .algebra import (
    Permutation,
    closure,
    compose,
    compose_all,
    is_idempotent,
    ominus,
    omega,
    oplus,
    permutation_theory,
    plus,
    power,
    prime_bridge,
    reduct,
    rename,
    star,
    union,
    unit,
)
from .core import (
    Alphabet,
    Atom,
    Interpretation,
    Rule,
    Theory,
    TheoryClass,
    bodies,
    classify,
    depends_on,
    heads,
    partition_facts_proper,
    reverse,
)
from .decomposition import (
    bh,
    decompose_acyclic,
    decompose_rule_binary,
    decompose_union,
    elevator,
    level_mapping,
    order_rules,
)
from .errors import (
    AlphabetError,
    CyclicError,
    DomainTooLargeError,
    HornError,
    ParseError,
    PrimeCollisionError,
)
from .semantics import (
    ModelStatus,
    check_model,
    equivalent,
    least_model,
    subsumption_equivalent,
    subsumption_normal_form,
    tp,
)
from .textio import eval_expression, parse_theory, read_theory, serialize_theory

__version__ = "0.1.0"
