"""Command-line interface.

Exit codes: 0 on success, 1 for usage and parse errors, 2 when a law is
violated or a theory that must be acyclic is cyclic.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import oracle
from .core import Alphabet, Interpretation, Theory, atom_set
from .decomposition import decompose_acyclic, decompose_union
from .errors import CyclicError, HornError
from .semantics import least_model
from .textio import TheoryDocument, eval_expression, format_atoms, literal_atoms, parse_expression, parse_theory, serialize_theory

EXIT_OK, EXIT_USAGE, EXIT_VIOLATION = 0, 1, 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: error: {message}")


def _load(path: str) -> TheoryDocument:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_theory(text, source=path)


def _parse_alphabet(text: str | None) -> frozenset:
    if not text:
        return frozenset()
    try:
        return atom_set(text)
    except ValueError as exc:
        raise _UsageError(f"--alphabet: {exc}") from None


def _write_value(value, out) -> None:
    if isinstance(value, Interpretation):
        value = value.as_theory()
    out.write(serialize_theory(value))


def cmd_eval(args, out) -> int:
    bindings = {}
    atoms = set(_parse_alphabet(args.alphabet))
    for spec in args.file or []:
        name, sep, path = spec.partition("=")
        if not sep or not name or not path:
            raise _UsageError(f"-f expects NAME=FILE, got {spec!r}")
        if name in bindings:
            raise _UsageError(f"duplicate binding {name!r}")
        doc = _load(path)
        bindings[name] = doc.theory
        atoms |= doc.alphabet.atoms
    expr = parse_expression(args.expr)
    atoms |= literal_atoms(expr)
    _write_value(eval_expression(expr, bindings, Alphabet(frozenset(atoms))), out)
    return EXIT_OK


def cmd_lm(args, out) -> int:
    doc = _load(args.file)
    out.write(format_atoms(least_model(doc.theory)) + "\n")
    return EXIT_OK


def cmd_decompose(args, out) -> int:
    doc = _load(args.file)
    if args.union:
        other = _load(args.union)
        alphabet = Alphabet(doc.alphabet.atoms | other.alphabet.atoms)
        factors = decompose_union(doc.theory, other.theory, alphabet)
    else:
        factors = decompose_acyclic(doc.theory)
    out.write("---\n".join(serialize_theory(f) for f in factors))
    return EXIT_OK


def _status(report) -> str:
    if report.holds and not report.expect_failure:
        return "ok"
    if not report.holds and report.expect_failure:
        return "fails as documented"
    if report.expect_failure:
        return "UNEXPECTEDLY HOLDS"
    return "VIOLATED"


def cmd_laws(args, out) -> int:
    if args.samples is not None and args.exhaustive:
        raise _UsageError("--exhaustive and --samples are mutually exclusive")
    if args.law:
        oracle.get_law(args.law)
    if args.alphabet_size < 0:
        raise _UsageError("--alphabet-size must be non-negative")
    alphabet = oracle.standard_alphabet(args.alphabet_size)
    mode = "sampled" if args.samples is not None else "exhaustive"
    results = oracle.check_all(
        alphabet, mode, seed=args.seed, count=args.samples or 0, law_ids=[args.law] if args.law else None
    )
    width = max(len(r[0] if isinstance(r, tuple) else r.law_id) for r in results)
    out.write(f"{'law':<{width}}  |A|  mode        {'cases':>10}  {'violations':>10}  status\n")
    code = EXIT_OK
    for r in results:
        if isinstance(r, tuple):
            out.write(f"{r[0]:<{width}}  {len(alphabet):>3}  {mode:<10}  {'-':>10}  {'-':>10}  skipped: {r[1]}\n")
            continue
        status = _status(r)
        out.write(f"{r.law_id:<{width}}  {r.domain_size:>3}  {r.mode:<10}  {r.cases_checked:>10}  {r.violations:>10}  {status}\n")
        if not r.as_expected:
            code = EXIT_VIOLATION
            for cx in r.counterexamples:
                out.write(f"    counterexample: {cx.describe()}\n")
    return code


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hornmonoid", description="Sequential composition of propositional Horn theories.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", help="evaluate an expression and print the resulting theory")
    p.add_argument("-f", "--file", action="append", metavar="NAME=FILE", help="bind NAME to the theory in FILE")
    p.add_argument("--alphabet", help="extra atoms for the ambient alphabet, comma separated")
    p.add_argument("expr")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("lm", help="print the least model of a theory")
    p.add_argument("file")
    p.set_defaults(func=cmd_lm)

    p = sub.add_parser("decompose", help="factor an acyclic theory, or a union with --union")
    p.add_argument("file")
    p.add_argument("--union", metavar="FILE2", help="decompose the union of FILE and FILE2 instead")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("laws", help="check the algebraic laws by brute force")
    p.add_argument("--alphabet-size", type=int, default=2)
    p.add_argument("--exhaustive", action="store_true", help="check every input tuple (default)")
    p.add_argument("--samples", type=int, metavar="K", help="check K seeded random tuples per law")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--law", metavar="ID", help="run only this law")
    p.set_defaults(func=cmd_laws)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except _UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except CyclicError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_VIOLATION
    except HornError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
