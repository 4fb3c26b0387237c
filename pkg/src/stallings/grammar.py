"""Context-free grammars over A±.

Terminals are signed letters (ints).  The placeholder terminal :data:`DOLLAR`
only lives inside intermediate grammars; it is substituted away before a
grammar is returned to callers.  Nonterminals may be any other hashable value
while a grammar is being built; :func:`renumber` gives them the printable
names ``S``, ``N1``, ``N2``, ...
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Mapping, Sequence

from .nfa import EPSILON, WordNFA, remove_epsilon
from .words import Alphabet, Word


class _Placeholder:
    def __repr__(self) -> str:
        return "$"


DOLLAR = _Placeholder()

Symbol = Hashable
Production = tuple[Symbol, tuple[Symbol, ...]]


def is_terminal(symbol: Symbol) -> bool:
    return symbol is DOLLAR or (isinstance(symbol, int) and not isinstance(symbol, bool))


@dataclass(frozen=True)
class Grammar:
    alphabet: Alphabet
    start: Symbol
    productions: tuple[Production, ...]

    @cached_property
    def by_lhs(self) -> dict[Symbol, list[tuple[Symbol, ...]]]:
        table: dict[Symbol, list[tuple[Symbol, ...]]] = {}
        for lhs, rhs in self.productions:
            table.setdefault(lhs, []).append(rhs)
        return table

    @cached_property
    def nonterminals(self) -> list[Symbol]:
        seen: dict[Symbol, None] = {self.start: None}
        for lhs, rhs in self.productions:
            seen.setdefault(lhs)
            for s in rhs:
                if not is_terminal(s):
                    seen.setdefault(s)
        return list(seen)

    @property
    def uses_placeholder(self) -> bool:
        return any(s is DOLLAR for _, rhs in self.productions for s in rhs)

    @property
    def is_empty(self) -> bool:
        return not self.productions

    @cached_property
    def parser(self) -> "_Parser":
        return _Parser(self)

    def accepts(self, word: Word) -> bool:
        return self.parser.accepts(tuple(word))

    def __contains__(self, word: Word) -> bool:
        return self.accepts(word)

    def format(self) -> str:
        return format_grammar(self)


# -- structural operations -----------------------------------------------------------


def trim(g: Grammar) -> Grammar:
    """Drop non-generating, then unreachable, nonterminals and their productions."""
    generating: set[Symbol] = set()
    changed = True
    while changed:
        changed = False
        for lhs, rhs in g.productions:
            if lhs not in generating and all(is_terminal(s) or s in generating for s in rhs):
                generating.add(lhs)
                changed = True
    prods = [
        (lhs, rhs)
        for lhs, rhs in g.productions
        if lhs in generating and all(is_terminal(s) or s in generating for s in rhs)
    ]
    by_lhs: dict[Symbol, list[tuple[Symbol, ...]]] = {}
    for lhs, rhs in prods:
        by_lhs.setdefault(lhs, []).append(rhs)
    reachable = {g.start} if g.start in generating else set()
    queue = deque(reachable)
    while queue:
        x = queue.popleft()
        for rhs in by_lhs.get(x, ()):
            for s in rhs:
                if not is_terminal(s) and s not in reachable:
                    reachable.add(s)
                    queue.append(s)
    return Grammar(g.alphabet, g.start, tuple(p for p in prods if p[0] in reachable))


def renumber(g: Grammar) -> Grammar:
    """Rename nonterminals ``S, N1, N2, ...`` in breadth-first order of first use."""
    names: dict[Symbol, str] = {g.start: "S"}
    queue = deque([g.start])
    while queue:
        x = queue.popleft()
        for rhs in g.by_lhs.get(x, ()):
            for s in rhs:
                if not is_terminal(s) and s not in names:
                    names[s] = f"N{len(names)}"
                    queue.append(s)
    prods = tuple(
        (names[lhs], tuple(s if is_terminal(s) else names[s] for s in rhs))
        for lhs, rhs in g.productions
        if lhs in names
    )
    ordered = sorted(prods, key=lambda p: _name_key(p[0]))
    return Grammar(g.alphabet, "S", tuple(ordered))


def _name_key(name: str) -> int:
    return 0 if name == "S" else int(name[1:])


def tag(g: Grammar, label: Hashable) -> Grammar:
    """Make nonterminals disjoint from other grammars by pairing them with ``label``."""

    def rename(s):
        return s if is_terminal(s) else (label, s)

    prods = tuple((rename(lhs), tuple(rename(s) for s in rhs)) for lhs, rhs in g.productions)
    return Grammar(g.alphabet, rename(g.start), prods)


def union(alphabet: Alphabet, grammars: Sequence[Grammar], start: Hashable = "union") -> Grammar:
    """Fresh start symbol with one production per (tagged) component grammar."""
    prods: list[Production] = []
    for i, g in enumerate(grammars):
        t = tag(g, (start, i))
        prods.append((start, (t.start,)))
        prods.extend(t.productions)
    return Grammar(alphabet, start, tuple(prods))


def substitute(g: Grammar, placeholder: Symbol, sub: Grammar, label: Hashable = "sub") -> Grammar:
    """Replace every occurrence of the terminal ``placeholder`` by the language of ``sub``."""
    t = tag(sub, label)
    prods = [
        (lhs, tuple(t.start if s is placeholder else s for s in rhs)) for lhs, rhs in g.productions
    ]
    return Grammar(g.alphabet, g.start, tuple(prods) + t.productions)


def right_linear(nfa: WordNFA) -> Grammar:
    """Grammar with one nonterminal per NFA state: ``p -> x q`` and ``f -> 1``."""
    start = "init"
    prods: list[Production] = [(start, (("q", i),)) for i in sorted(nfa.initial)]
    for p, x, q in nfa.transitions:
        prods.append((("q", p), (("q", q),) if x == EPSILON else (x, ("q", q))))
    prods += [(("q", f), ()) for f in sorted(nfa.final)]
    return Grammar(nfa.alphabet, start, tuple(prods))


# -- Bar-Hillel product -----------------------------------------------------------------


@dataclass
class SymbolNFA:
    """Epsilon-free automaton over arbitrary terminal symbols (letters and DOLLAR)."""

    num_states: int
    delta: dict[int, dict[Symbol, list[int]]] = field(default_factory=dict)
    initial: set[int] = field(default_factory=set)
    final: set[int] = field(default_factory=set)

    def add(self, p: int, symbol: Symbol, q: int) -> None:
        self.delta.setdefault(p, {}).setdefault(symbol, []).append(q)

    @classmethod
    def from_word_nfa(cls, nfa: WordNFA) -> "SymbolNFA":
        nfa = remove_epsilon(nfa)
        out = cls(nfa.num_states, initial=set(nfa.initial), final=set(nfa.final))
        for p, x, q in nfa.transitions:
            out.add(p, x, q)
        return out

    def predecessors(self) -> dict[int, dict[Symbol, list[int]]]:
        back: dict[int, dict[Symbol, list[int]]] = {}
        for p, row in self.delta.items():
            for s, targets in row.items():
                for q in targets:
                    back.setdefault(q, {}).setdefault(s, []).append(p)
        return back


def bar_hillel(g: Grammar, nfa: SymbolNFA, label: Hashable = "bh") -> Grammar:
    """Grammar for L(g) intersected with L(nfa); nonterminals become (p, X, q) triples.

    Only triples reachable from the new start symbol are expanded.  For each
    production the state sequence is enumerated left to right; a trailing run
    of terminals is matched backwards from the target state to avoid guessing
    the state after the last nonterminal.
    """
    back = nfa.predecessors()
    states = range(nfa.num_states)
    start = (label, "start")
    prods: list[Production] = [
        (start, ((label, i, g.start, f),)) for i in sorted(nfa.initial) for f in sorted(nfa.final)
    ]
    seen = {rhs[0] for _, rhs in prods}
    queue = deque(seen)

    def backward(q: int, suffix: Sequence[Symbol]) -> set[int]:
        current = {q}
        for s in reversed(suffix):
            current = {p for t in current for p in back.get(t, {}).get(s, ())}
        return current

    while queue:
        triple = queue.popleft()
        _, p, x, q = triple
        for rhs in g.by_lhs.get(x, ()):
            tail = len(rhs)
            while tail > 0 and is_terminal(rhs[tail - 1]):
                tail -= 1
            partial: list[tuple[int, tuple]] = [(p, ())]
            for i, s in enumerate(rhs):
                nxt = []
                if is_terminal(s):
                    for state, acc in partial:
                        for t in nfa.delta.get(state, {}).get(s, ()):
                            nxt.append((t, acc + (s,)))
                else:
                    targets = backward(q, rhs[i + 1 :]) if i + 1 == tail else states
                    for state, acc in partial:
                        for t in targets:
                            nxt.append((t, acc + ((label, state, s, t),)))
                partial = nxt
                if not partial:
                    break
            for state, acc in partial:
                if state != q:
                    continue
                prods.append((triple, acc))
                for sym in acc:
                    if not is_terminal(sym) and sym not in seen:
                        seen.add(sym)
                        queue.append(sym)
    return trim(Grammar(g.alphabet, start, tuple(prods)))


# -- membership ---------------------------------------------------------------------


class _Parser:
    """CYK over a grammar in binary normal form with unit and epsilon rules kept.

    Productions are split so that every right-hand side has length at most
    two; nullable symbols turn binary rules into extra unit rules, and each
    table cell is closed upward under the unit relation.
    """

    def __init__(self, g: Grammar):
        self.start = g.start
        binary: list[tuple[Symbol, Symbol, Symbol]] = []
        unit: list[tuple[Symbol, Symbol]] = []
        empty: set[Symbol] = set()
        fresh = 0
        for lhs, rhs in g.productions:
            if not rhs:
                empty.add(lhs)
            elif len(rhs) == 1:
                unit.append((lhs, rhs[0]))
            else:
                head = lhs
                rest = list(rhs)
                while len(rest) > 2:
                    fresh += 1
                    new = ("_bin", fresh)
                    binary.append((head, rest[0], new))
                    head, rest = new, rest[1:]
                binary.append((head, rest[0], rest[1]))

        nullable = set(empty)
        changed = True
        while changed:
            changed = False
            for a, b in unit:
                if a not in nullable and b in nullable:
                    nullable.add(a)
                    changed = True
            for a, b, c in binary:
                if a not in nullable and b in nullable and c in nullable:
                    nullable.add(a)
                    changed = True
        self.nullable = nullable

        up: dict[Symbol, set[Symbol]] = {}
        for a, b in unit:
            up.setdefault(b, set()).add(a)
        for a, b, c in binary:
            if c in nullable:
                up.setdefault(b, set()).add(a)
            if b in nullable:
                up.setdefault(c, set()).add(a)
        self.up = up
        self.by_first: dict[Symbol, list[tuple[Symbol, Symbol]]] = {}
        for a, b, c in binary:
            self.by_first.setdefault(b, []).append((c, a))
        self._closure: dict[Symbol, frozenset[Symbol]] = {}

    def closure_of(self, symbol: Symbol) -> frozenset[Symbol]:
        cached = self._closure.get(symbol)
        if cached is None:
            seen = {symbol}
            stack = [symbol]
            while stack:
                s = stack.pop()
                for t in self.up.get(s, ()):
                    if t not in seen:
                        seen.add(t)
                        stack.append(t)
            cached = self._closure[symbol] = frozenset(seen)
        return cached

    def close(self, symbols: Iterable[Symbol]) -> set[Symbol]:
        out: set[Symbol] = set()
        for s in symbols:
            if s not in out:
                out |= self.closure_of(s)
        return out

    def accepts(self, word: Word) -> bool:
        n = len(word)
        if n == 0:
            return self.start in self.nullable
        table: dict[tuple[int, int], set[Symbol]] = {}
        for i, x in enumerate(word):
            table[(i, i + 1)] = self.close([x])
        for span in range(2, n + 1):
            for i in range(n - span + 1):
                j = i + span
                found: set[Symbol] = set()
                for k in range(i + 1, j):
                    right = table[(k, j)]
                    if not right:
                        continue
                    for b in table[(i, k)]:
                        for c, a in self.by_first.get(b, ()):
                            if c in right:
                                found.add(a)
                table[(i, j)] = self.close(found)
        return self.start in table[(0, n)]


def grammar_membership(g: Grammar, word: Word) -> bool:
    return g.accepts(word)


# -- text format --------------------------------------------------------------------


def format_grammar(g: Grammar) -> str:
    """One line per nonterminal: ``S -> a S A | $``; the empty word prints as ``1``."""
    compact = g.alphabet.compact
    clash = compact and any(c in g.alphabet.names for c in ("s", "n"))

    def show(s: Symbol) -> str:
        if s is DOLLAR:
            return "$"
        if is_terminal(s):
            return g.alphabet.token(s)
        return f"<{s}>" if clash else str(s)

    if g.is_empty:
        return ""
    lines = []
    for lhs in g.nonterminals:
        alts = g.by_lhs.get(lhs)
        if not alts:
            continue
        rendered = [" ".join(show(s) for s in rhs) if rhs else "1" for rhs in alts]
        lines.append(f"{show(lhs)} -> " + " | ".join(rendered))
    return "\n".join(lines) + "\n"


def palindrome_grammar(alphabet: Alphabet) -> Grammar:
    """Generates ``v $ v^-1`` for every word v over A±."""
    prods: list[Production] = [("S", (DOLLAR,))]
    prods += [("S", (x, "S", -x)) for x in alphabet.letters()]
    return Grammar(alphabet, "S", tuple(prods))


def grammar_from_mapping(
    alphabet: Alphabet, start: Symbol, rules: Mapping[Symbol, Iterable[Sequence[Symbol]]]
) -> Grammar:
    prods = tuple((lhs, tuple(rhs)) for lhs, alts in rules.items() for rhs in alts)
    return Grammar(alphabet, start, prods)
