"""Command-line front end: ``stallings VERB [options]``.

Exit status is 0 on success, 1 when the library rejects the input (a
precondition or parse error) and 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Callable

from . import cocycles, complements, corank
from . import nfa as fa
from .automaton import Automaton, classify
from .errors import AlphabetMismatchError, StallingsError
from .lattice import Subgroup, conjugate, index_of, intersect, join, membership
from .words import Alphabet, cyclic_reduce, free_reduce


class UsageError(Exception):
    pass


# -- argument plumbing ------------------------------------------------------------


def _alphabet(args, required: bool) -> Alphabet | None:
    if getattr(args, "alphabet", None):
        names = tuple(s.strip() for s in args.alphabet.split(",") if s.strip())
        alphabet = Alphabet(names)
        if args.n is not None and args.n != alphabet.n:
            raise UsageError(f"-n {args.n} disagrees with --alphabet of size {alphabet.n}")
        return alphabet
    if getattr(args, "n", None) is not None:
        if args.n < 1:
            raise UsageError("-n must be positive")
        return Alphabet.standard(args.n)
    if required:
        raise UsageError("give the alphabet with -n or --alphabet")
    return None


def _read_automaton(path: str) -> Automaton:
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    return Automaton.from_json(text)


def _subgroup(args, gens_attr: str = "generators", file_attr: str = "automaton") -> Subgroup:
    path = getattr(args, file_attr, None)
    gens = getattr(args, gens_attr, None)
    if path is not None and gens is not None:
        raise UsageError("give generators or an automaton file, not both")
    if path is not None:
        aut = _read_automaton(path)
        alphabet = _alphabet(args, required=False)
        if alphabet is not None and alphabet != aut.alphabet:
            raise AlphabetMismatchError("automaton alphabet differs from the requested one")
        return Subgroup.from_automaton(aut)
    alphabet = _alphabet(args, required=True)
    return Subgroup.generated_by(alphabet, alphabet.parse_list(gens or ""))


def _word_alphabet(args) -> Alphabet:
    alphabet = _alphabet(args, required=False)
    return alphabet if alphabet is not None else Alphabet.standard(26)


def _emit_subgroup(h: Subgroup, fmt: str) -> str:
    if fmt == "json":
        return h.automaton.to_json() + "\n"
    if fmt == "dot":
        return h.automaton.to_dot()
    return ",".join(h.alphabet.format(w) for w in h.basis) + "\n" if h.basis else "1\n"


def _emit_bool(value: bool) -> str:
    return ("true" if value else "false") + "\n"


def _emit_json(data) -> str:
    return json.dumps(data) + "\n"


# -- verbs ------------------------------------------------------------------------


def cmd_reduce(args) -> str:
    alphabet = _word_alphabet(args)
    return alphabet.format(free_reduce(alphabet.parse(args.word))) + "\n"


def cmd_cyclic_reduce(args) -> str:
    alphabet = _word_alphabet(args)
    v, w = cyclic_reduce(alphabet.parse(args.word))
    if args.format == "json":
        return _emit_json({"conjugator": alphabet.format(v), "core": alphabet.format(w)})
    return f"{alphabet.format(v)} {alphabet.format(w)}\n"


def cmd_stallings(args) -> str:
    h = _subgroup(args)
    if args.format == "text":
        aut = h.automaton
        flags = classify(aut)
        lines = [f"vertices {aut.num_vertices}", f"basepoint {aut.basepoint}"]
        lines += [f"{p} {aut.alphabet.names[a - 1]} {q}" for p, a, q in aut.arcs]
        lines.append(
            "flags "
            + " ".join(
                name
                for name in ("deterministic", "complete", "core", "connected", "bouquet")
                if getattr(flags, name)
            )
        )
        return "\n".join(lines) + "\n"
    return _emit_subgroup(h, args.format)


def cmd_rank(args) -> str:
    return f"{_subgroup(args).rank}\n"


def cmd_basis(args) -> str:
    h = _subgroup(args)
    words = [h.alphabet.format(w) for w in h.basis]
    if args.format == "json":
        return _emit_json(words)
    return "".join(w + "\n" for w in words)


def cmd_index(args) -> str:
    result = index_of(_subgroup(args))
    if args.format == "json":
        return _emit_json({"finite": result.finite, "index": result.value})
    return f"{result}\n"


def cmd_member(args) -> str:
    h = _subgroup(args)
    return _emit_bool(membership(h, h.alphabet.parse(args.word)))


def cmd_join(args) -> str:
    h = _subgroup(args)
    k = _subgroup(args, "other", "other_automaton")
    return _emit_subgroup(join(h, k), args.format)


def cmd_intersect(args) -> str:
    h = _subgroup(args)
    k = _subgroup(args, "other", "other_automaton")
    return _emit_subgroup(intersect(h, k), args.format)


def cmd_conjugate(args) -> str:
    h = _subgroup(args)
    return _emit_subgroup(conjugate(h, h.alphabet.parse(args.word)), args.format)


def cmd_corank(args) -> str:
    h = _subgroup(args)
    if args.recursive:
        value = corank.join_corank_recursive(h)
        if args.format == "json":
            return _emit_json({"corank": value, "algorithm": "recursive"})
        return f"{value}\n"
    jobs = args.jobs if args.jobs is not None else corank.default_jobs()
    cert = corank.join_corank(h, jobs=jobs)
    if args.format == "json":
        return _emit_json(cert.to_dict(h.alphabet))
    out = f"{cert.corank}\n"
    if args.witness:
        out += "".join(h.alphabet.format(w) + "\n" for w in cert.witness)
    return out


def cmd_complement(args) -> str:
    h = _subgroup(args)
    if args.kind == "proper-join":
        return _emit_subgroup(complements.proper_join_complement(h), args.format)
    if args.kind == "exists-meet":
        return _emit_bool(complements.has_meet_complement(h))
    cert = complements.construct_direct_complement(h)
    if args.format == "json":
        return _emit_json(cert.to_dict(h.alphabet))
    alphabet = h.alphabet
    gens = ",".join(alphabet.format(w) for w in cert.complement.basis)
    return f"conjugator {alphabet.format(cert.conjugator)}\ncomplement {gens}\n"


def cmd_cocycle(args) -> str:
    h = _subgroup(args)
    action = args.action
    if action in ("is-join", "is-meet", "is-direct"):
        if args.target is None:
            raise UsageError(f"cocycle {action} needs a word")
        test: Callable = {
            "is-join": cocycles.is_join_cocycle,
            "is-meet": cocycles.is_meet_cocycle,
            "is-direct": cocycles.is_direct_cocycle,
        }[action]
        return _emit_bool(test(h, h.alphabet.parse(args.target)))
    if action == "nfa":
        builders = {
            "join": lambda: cocycles.join_cocycle_nfa(h),
            "meet-cr": lambda: cocycles.meet_cr_cocycle_nfa(h, args.budget),
            "direct-cr": lambda: cocycles.direct_cr_cocycle_nfa(h, args.budget),
        }
        if args.target not in builders:
            raise UsageError("cocycle nfa needs one of: join, meet-cr, direct-cr")
        automaton = builders[args.target]()
        if args.check:
            return _emit_bool(automaton.accepts(h.alphabet.parse(args.check)))
        return automaton.to_dot() if args.format == "dot" else automaton.to_json() + "\n"
    if action == "grammar":
        g = cocycles.direct_cocycle_grammar(h, args.budget)
        if args.check:
            return _emit_bool(g.accepts(free_reduce(h.alphabet.parse(args.check))))
        return g.format()
    raise UsageError(f"unknown cocycle action {action!r}")


def cmd_family(args) -> str:
    build = corank.family_h if args.which == "h" else corank.family_k
    if args.n is None:
        raise UsageError("family needs -n")
    return _emit_subgroup(build(args.r, args.c, args.n), args.format)


# -- parser -----------------------------------------------------------------------


def _add_alphabet(p: argparse.ArgumentParser) -> None:
    p.add_argument("-n", type=int, help="number of positive letters")
    p.add_argument("--alphabet", help="comma-separated letter names")


def _add_subject(p: argparse.ArgumentParser, second: bool = False) -> None:
    _add_alphabet(p)
    p.add_argument("-g", "--generators", help="comma-separated generator words")
    p.add_argument("--automaton", metavar="FILE", help="automaton JSON ('-' for stdin)")
    if second:
        p.add_argument("-k", "--other", help="generators of the second subgroup")
        p.add_argument("--other-automaton", metavar="FILE", help="second automaton JSON")


def _add_format(p: argparse.ArgumentParser, default: str, choices=("json", "dot", "text")) -> None:
    p.add_argument("--format", choices=choices, default=default)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stallings", description="Subgroups of free groups via Stallings automata."
    )
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized helpers")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("reduce", help="free reduction of a word")
    _add_alphabet(p)
    p.add_argument("word")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("cyclic-reduce", help="split a word as conjugator . core . conjugator^-1")
    _add_alphabet(p)
    _add_format(p, "text", ("json", "text"))
    p.add_argument("word")
    p.set_defaults(func=cmd_cyclic_reduce)

    p = sub.add_parser("stallings", help="canonical Stallings automaton")
    _add_subject(p)
    _add_format(p, "json")
    p.set_defaults(func=cmd_stallings)

    for verb, func, helptext in (
        ("rank", cmd_rank, "rank of the subgroup"),
        ("basis", cmd_basis, "free basis from the canonical spanning tree"),
        ("index", cmd_index, "index in the free group"),
    ):
        p = sub.add_parser(verb, help=helptext)
        _add_subject(p)
        _add_format(p, "text", ("json", "text"))
        p.set_defaults(func=func)

    p = sub.add_parser("member", help="membership of a word")
    _add_subject(p)
    p.add_argument("word")
    p.set_defaults(func=cmd_member)

    for verb, func in (("join", cmd_join), ("intersect", cmd_intersect)):
        p = sub.add_parser(verb, help=f"{verb} of two subgroups (-g and -k)")
        _add_subject(p, second=True)
        _add_format(p, "text")
        p.set_defaults(func=func)

    p = sub.add_parser("conjugate", help="the conjugate g^-1 H g")
    _add_subject(p)
    _add_format(p, "text")
    p.add_argument("word")
    p.set_defaults(func=cmd_conjugate)

    p = sub.add_parser("corank", help="join-corank with certificate")
    _add_subject(p)
    _add_format(p, "json", ("json", "text"))
    p.add_argument("--witness", action="store_true", help="list complement generators (text)")
    p.add_argument("--recursive", action="store_true", help="use the recursive algorithm")
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default: cores)")
    p.set_defaults(func=cmd_corank)

    p = sub.add_parser("complement", help="join, meet and direct complements")
    p.add_argument("kind", choices=("proper-join", "direct", "exists-meet"))
    _add_subject(p)
    _add_format(p, "text")
    p.set_defaults(func=cmd_complement)

    p = sub.add_parser("cocycle", help="cocycle tests, automata and grammar")
    p.add_argument("action", choices=("is-join", "is-meet", "is-direct", "nfa", "grammar"))
    p.add_argument("target", nargs="?", help="word to test, or the nfa kind")
    _add_subject(p)
    _add_format(p, "json", ("json", "dot"))
    p.add_argument("--check", metavar="WORD", help="test WORD against the built language")
    p.add_argument("--budget", type=int, default=fa.DEFAULT_STATE_BUDGET)
    p.set_defaults(func=cmd_cocycle)

    p = sub.add_parser("family", help="the test families H(r,c) and K(r,c)")
    p.add_argument("which", choices=("h", "k"))
    p.add_argument("-r", type=int, required=True)
    p.add_argument("-c", type=int, required=True)
    _add_alphabet(p)
    _add_format(p, "text")
    p.set_defaults(func=cmd_family)
    return parser


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    random.seed(args.seed)
    try:
        stdout.write(args.func(args))
    except UsageError as exc:
        print(f"stallings: usage error: {exc}", file=stderr)
        return 2
    except (StallingsError, ValueError, OSError) as exc:
        print(f"stallings: error: {exc}", file=stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
