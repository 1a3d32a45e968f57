"""Theory files and the expression language.

Theory file syntax::

    % comment
    #alphabet a, b, c.
    a.
    b :- a, c'.

Expressions combine theories with ``*`` (composition), ``+`` (union) and
the postfix operators ``^*``, ``^+``, ``^w`` and ``^n``. Inline literals
``{a :- b, c. d.}`` denote theories; ``{a, b}`` denotes a set of atoms.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, Mapping

from . import algebra, semantics
from .core import (
    Alphabet,
    Atom,
    Interpretation,
    Rule,
    Theory,
    as_theory,
    atom_set,
    bodies,
    heads,
    reverse,
    rule_key,
)
from .errors import (
    AlphabetError,
    ArityError,
    EvaluationTypeError,
    ParseError,
    UnboundIdentifierError,
)

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>%[^\n]*)
  | (?P<header>\#alphabet\b)
  | (?P<neck>:-)
  | (?P<atom>[a-z][A-Za-z0-9_]*'*)
  | (?P<ident>[A-Z][A-Za-z0-9_]*)
  | (?P<int>[0-9]+)
  | (?P<pow>\^)
  | (?P<op>[.,{}()*+])
    """,
    re.VERBOSE,
)

_TOKEN_NAMES = {
    "atom": "atom",
    "ident": "identifier",
    "int": "integer",
    "header": "'#alphabet'",
    "eof": "end of input",
}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int

    def describe(self) -> str:
        if self.kind == "eof":
            return "end of input"
        return repr(self.text)


def tokenize(text: str, source: str | None = None) -> list[Token]:
    tokens = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1, source=source)
        kind = m.lastgroup
        value = m.group()
        if kind not in ("ws", "comment"):
            if kind in ("op", "neck"):
                kind = value
            tokens.append(Token(kind, value, line, pos - line_start + 1))
        nl = value.count("\n")
        if nl:
            line += nl
            line_start = pos + value.rfind("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Cursor:
    def __init__(self, tokens: list[Token], source: str | None):
        self.tokens = tokens
        self.i = 0
        self.source = source

    @property
    def peek(self) -> Token:
        return self.tokens[self.i]

    def lookahead(self, k: int = 1) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def at(self, *kinds) -> bool:
        return self.peek.kind in kinds

    def take(self, *kinds) -> Token:
        tok = self.peek
        if tok.kind not in kinds:
            self.fail(f"unexpected {tok.describe()}", kinds)
        self.i += 1
        return tok

    def fail(self, message: str, expected=()):
        tok = self.peek
        raise ParseError(
            message,
            tok.line,
            tok.column,
            [_TOKEN_NAMES.get(k, repr(k)) for k in expected],
            source=self.source,
        )


def _atom(tok: Token) -> Atom:
    return Atom.parse(tok.text)


@dataclass(frozen=True)
class TheoryDocument:
    theory: Theory
    declared_alphabet: Alphabet | None = None

    @property
    def alphabet(self) -> Alphabet:
        return self.declared_alphabet or Alphabet(self.theory.atoms())


def _parse_atom_list(cur: _Cursor, stop: str) -> list[Atom]:
    atoms = [_atom(cur.take("atom"))]
    while cur.at(","):
        cur.take(",")
        atoms.append(_atom(cur.take("atom")))
    cur.take(stop)
    return atoms


def parse_theory(text: str, source: str | None = None) -> TheoryDocument:
    """Parse a theory file; ``source`` names the file in error messages."""
    cur = _Cursor(tokenize(text, source), source)
    declared = None
    if cur.at("header"):
        cur.take("header")
        declared = Alphabet(frozenset(_parse_atom_list(cur, ".")))
    rules = []
    while not cur.at("eof"):
        head_tok = cur.take("atom")
        if cur.at("."):
            cur.take(".")
            rules.append(Rule(_atom(head_tok), frozenset()))
            continue
        if not cur.at(":-"):
            cur.fail(f"unexpected {cur.peek.describe()}", (".", ":-"))
        cur.take(":-")
        body = _parse_atom_list(cur, ".")
        rules.append(Rule(_atom(head_tok), frozenset(body)))
    theory = Theory(frozenset(rules))
    if declared is not None:
        missing = theory.atoms() - declared.atoms
        if missing:
            raise AlphabetError(missing, f"{source or '<input>'}: #alphabet header")
    return TheoryDocument(theory, declared)


def read_theory(text: str) -> Theory:
    """Shorthand for ``parse_theory(text).theory``."""
    return parse_theory(text).theory


def serialize_theory(p) -> str:
    """Facts first, then proper rules, each group in canonical order; one rule per line."""
    p = as_theory(p)
    ordered = sorted(p.rules, key=lambda r: (bool(r.body), rule_key(r)))
    return "".join(str(r) + "\n" for r in ordered)


def serialize_document(doc: TheoryDocument) -> str:
    text = serialize_theory(doc.theory)
    if doc.declared_alphabet is not None:
        header = "#alphabet " + ", ".join(str(a) for a in doc.declared_alphabet) + ".\n"
        if not doc.declared_alphabet.atoms:
            raise ValueError("cannot serialize an empty #alphabet header")
        text = header + text
    return text


def format_atoms(i) -> str:
    return ", ".join(str(a) for a in sorted(atom_set(i)))


# ---------------------------------------------------------------- expressions


@dataclass(frozen=True)
class Expression:
    """Base class of expression tree nodes."""


@dataclass(frozen=True)
class Name(Expression):
    ident: str
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Literal(Expression):
    value: object  # Theory or Interpretation


@dataclass(frozen=True)
class IntLiteral(Expression):
    value: int


@dataclass(frozen=True)
class Call(Expression):
    fn: str
    args: tuple
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


FUNCTIONS = (
    "compose", "union", "star", "plus", "omega", "power", "unit", "facts", "proper",
    "rev", "lred", "rred", "restrict", "cl", "ominus", "oplus", "heads", "bodies",
    "lm", "tp", "bridge_up", "bridge_down",
)


def _parse_braces(cur: _Cursor) -> Literal:
    cur.take("{")
    items: list[Rule] = []
    saw_rule_syntax = False
    while not cur.at("}"):
        head = _atom(cur.take("atom"))
        if cur.at(":-"):
            saw_rule_syntax = True
            cur.take(":-")
            body = [_atom(cur.take("atom"))]
            while cur.at(","):
                cur.take(",")
                body.append(_atom(cur.take("atom")))
            items.append(Rule(head, frozenset(body)))
            if cur.at("."):
                cur.take(".")
            elif not cur.at("}"):
                cur.fail(f"unexpected {cur.peek.describe()}", (".", "}"))
        else:
            items.append(Rule(head, frozenset()))
            if cur.at(".", ","):
                saw_rule_syntax = saw_rule_syntax or cur.peek.kind == "."
                cur.take(".", ",")
            elif not cur.at("}"):
                cur.fail(f"unexpected {cur.peek.describe()}", (".", ",", "}"))
    cur.take("}")
    theory = Theory(frozenset(items))
    if not saw_rule_syntax:
        return Literal(Interpretation.from_theory(theory))
    return Literal(theory)


def _parse_primary(cur: _Cursor) -> Expression:
    tok = cur.peek
    if tok.kind == "ident":
        cur.take("ident")
        return Name(tok.text, tok.line, tok.column)
    if tok.kind == "(":
        cur.take("(")
        e = _parse_expr(cur)
        cur.take(")")
        return e
    if tok.kind == "{":
        return _parse_braces(cur)
    if tok.kind == "atom" and cur.lookahead().kind == "(":
        if tok.text not in FUNCTIONS:
            cur.fail(f"unknown function {tok.text!r}")
        cur.take("atom")
        cur.take("(")
        args = []
        if not cur.at(")"):
            args.append(_parse_arg(cur))
            while cur.at(","):
                cur.take(",")
                args.append(_parse_arg(cur))
        cur.take(")")
        return Call(tok.text, tuple(args), tok.line, tok.column)
    cur.fail(f"unexpected {tok.describe()}", ("identifier", "(", "{", "function"))


def _parse_arg(cur: _Cursor) -> Expression:
    if cur.at("int"):
        return IntLiteral(int(cur.take("int").text))
    return _parse_expr(cur)


def _parse_factor(cur: _Cursor) -> Expression:
    e = _parse_primary(cur)
    while cur.at("pow"):
        cur.take("pow")
        tok = cur.peek
        if tok.kind == "*":
            cur.take("*")
            e = Call("star", (e,))
        elif tok.kind == "+":
            cur.take("+")
            e = Call("plus", (e,))
        elif tok.kind == "atom" and tok.text == "w":
            cur.take("atom")
            e = Call("omega", (e,))
        elif tok.kind == "int":
            cur.take("int")
            e = Call("power", (e, IntLiteral(int(tok.text))))
        else:
            cur.fail(f"unexpected {tok.describe()} after '^'", ("*", "+", "w", "integer"))
    return e


def _parse_term(cur: _Cursor) -> Expression:
    e = _parse_factor(cur)
    while cur.at("*"):
        cur.take("*")
        e = Call("compose", (e, _parse_factor(cur)))
    return e


def _parse_expr(cur: _Cursor) -> Expression:
    e = _parse_term(cur)
    while cur.at("+"):
        cur.take("+")
        e = Call("union", (e, _parse_term(cur)))
    return e


def parse_expression(src: str) -> Expression:
    cur = _Cursor(tokenize(src), "<expr>")
    e = _parse_expr(cur)
    if not cur.at("eof"):
        cur.fail(f"unexpected {cur.peek.describe()}", ("+", "*", "^", "end of input"))
    return e


def literal_atoms(e: Expression) -> frozenset:
    """Atoms mentioned by inline literals anywhere in ``e``."""
    if isinstance(e, Literal):
        v = e.value
        return v.atoms() if isinstance(v, Theory) else v.atoms
    if isinstance(e, Call):
        out = frozenset()
        for a in e.args:
            out |= literal_atoms(a)
        return out
    return frozenset()


def names(e: Expression) -> frozenset:
    if isinstance(e, Name):
        return frozenset((e.ident,))
    if isinstance(e, Call):
        out = frozenset()
        for a in e.args:
            out |= names(a)
        return out
    return frozenset()


def _atoms_of(value, fn: str) -> frozenset:
    if isinstance(value, Interpretation):
        return value.atoms
    if isinstance(value, Theory) and value.is_interpretation():
        return frozenset(r.head for r in value.rules)
    raise EvaluationTypeError(f"{fn}: expected a set of atoms, got a theory with proper rules")


# name -> (allowed arities, implementation(args, alphabet))
_SIGNATURES: dict[str, tuple[tuple[int, ...], Callable]] = {
    "compose": ((2, 3, 4, 5, 6, 7, 8), lambda xs, a: algebra.compose_all(xs)),
    "union": ((2, 3, 4, 5, 6, 7, 8), lambda xs, a: algebra.union(*xs)),
    "star": ((1,), lambda xs, a: algebra.star(xs[0], a)),
    "plus": ((1,), lambda xs, a: algebra.plus(xs[0], a)),
    "omega": ((1,), lambda xs, a: algebra.omega(xs[0], a)),
    "power": ((2,), lambda xs, a: algebra.power(xs[0], xs[1], a)),
    "unit": ((0, 1), lambda xs, a: algebra.unit(_atoms_of(xs[0], "unit") if xs else a.atoms)),
    "facts": ((1,), lambda xs, a: as_theory(xs[0]).facts()),
    "proper": ((1,), lambda xs, a: as_theory(xs[0]).proper()),
    "rev": ((1,), lambda xs, a: reverse(as_theory(xs[0]))),
    "lred": ((2,), lambda xs, a: algebra.reduct(xs[0], _atoms_of(xs[1], "lred"), "left")),
    "rred": ((2,), lambda xs, a: algebra.reduct(xs[0], _atoms_of(xs[1], "rred"), "right")),
    "restrict": ((2,), lambda xs, a: algebra.reduct(xs[0], _atoms_of(xs[1], "restrict"), "both")),
    "cl": ((2,), lambda xs, a: algebra.closure(xs[0], _atoms_of(xs[1], "cl"))),
    "ominus": ((1,), lambda xs, a: algebra.ominus(_atoms_of(xs[0], "ominus"), a)),
    "oplus": ((1,), lambda xs, a: algebra.oplus(_atoms_of(xs[0], "oplus"), a)),
    "heads": ((1,), lambda xs, a: heads(as_theory(xs[0]))),
    "bodies": ((1,), lambda xs, a: bodies(as_theory(xs[0]))),
    "lm": ((1,), lambda xs, a: semantics.least_model(xs[0])),
    "tp": ((2,), lambda xs, a: semantics.tp(xs[0], _atoms_of(xs[1], "tp"))),
    "bridge_up": ((0, 1), lambda xs, a: algebra.prime_bridge(_atoms_of(xs[0], "bridge_up") if xs else a.atoms, a, "up")),
    "bridge_down": ((0, 1), lambda xs, a: algebra.prime_bridge(_atoms_of(xs[0], "bridge_down") if xs else a.atoms, a, "down")),
}


def _eval(e: Expression, env: Mapping[str, object], alphabet: Alphabet):
    if isinstance(e, Literal):
        return e.value
    if isinstance(e, IntLiteral):
        return e.value
    if isinstance(e, Name):
        if e.ident not in env:
            raise UnboundIdentifierError(f"unbound identifier {e.ident!r} at {e.line}:{e.column}")
        return env[e.ident]
    if isinstance(e, Call):
        arities, impl = _SIGNATURES[e.fn]
        if len(e.args) not in arities:
            want = " or ".join(str(n) for n in arities[:3]) + (" or more" if len(arities) > 3 else "")
            raise ArityError(f"{e.fn} takes {want} arguments, got {len(e.args)}")
        args = [_eval(x, env, alphabet) for x in e.args]
        for k, (x, arg) in enumerate(zip(e.args, args)):
            wants_int = e.fn == "power" and k == 1
            if wants_int != isinstance(arg, int):
                kind = "an integer" if wants_int else "a theory or set of atoms"
                raise EvaluationTypeError(f"{e.fn}: argument {k + 1} must be {kind}")
        return impl(args, alphabet)
    raise TypeError(f"not an expression: {e!r}")


def eval_expression(src, bindings: Mapping[str, object] | None = None, alphabet=None):
    """Evaluate ``src`` and return a :class:`Theory` or :class:`Interpretation`.

    Without an explicit ``alphabet`` the ambient one is every atom of the
    bindings and the inline literals. An explicit alphabet must cover them.
    """
    bindings = dict(bindings or {})
    e = src if isinstance(src, Expression) else parse_expression(src)
    for key in names(e):
        if key not in bindings:
            raise UnboundIdentifierError(f"unbound identifier {key!r}")
    used = set(literal_atoms(e))
    for v in bindings.values():
        used |= as_theory(v).atoms()
    if alphabet is None:
        alphabet = Alphabet(frozenset(used))
    elif not isinstance(alphabet, Alphabet):
        alphabet = Alphabet(atom_set(alphabet))
    alphabet.check(used, "expression")
    return _eval(e, bindings, alphabet)
