"""Finite automata over A± and the closure operations the cocycle languages need.

Letters are signed ints as in :mod:`stallings.words`; the letter ``0`` marks an
epsilon transition.  Every operation returns a new :class:`WordNFA` with
states renumbered ``0..k-1``.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable

from .automaton import Automaton
from .errors import AlphabetMismatchError, StateBudgetExceeded
from .words import Alphabet, Word

EPSILON = 0
DEFAULT_STATE_BUDGET = 1_000_000

Transition = tuple[int, int, int]


@dataclass(frozen=True)
class WordNFA:
    alphabet: Alphabet
    num_states: int
    transitions: tuple[Transition, ...]
    initial: frozenset[int]
    final: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "transitions", tuple(sorted(set(self.transitions))))
        object.__setattr__(self, "initial", frozenset(self.initial))
        object.__setattr__(self, "final", frozenset(self.final))
        for p, x, q in self.transitions:
            if not (0 <= p < self.num_states and 0 <= q < self.num_states):
                raise ValueError(f"transition {(p, x, q)} has an invalid state")
            if abs(x) > self.alphabet.n:
                raise ValueError(f"transition {(p, x, q)} uses an unknown letter")
        for s in self.initial | self.final:
            if not 0 <= s < self.num_states:
                raise ValueError(f"state {s} out of range")

    @cached_property
    def delta(self) -> dict[int, dict[int, list[int]]]:
        table: dict[int, dict[int, list[int]]] = {}
        for p, x, q in self.transitions:
            table.setdefault(p, {}).setdefault(x, []).append(q)
        return table

    @cached_property
    def has_epsilon(self) -> bool:
        return any(x == EPSILON for _, x, _ in self.transitions)

    def closure(self, states: Iterable[int]) -> frozenset[int]:
        seen = set(states)
        stack = list(seen)
        while stack:
            p = stack.pop()
            for q in self.delta.get(p, {}).get(EPSILON, ()):
                if q not in seen:
                    seen.add(q)
                    stack.append(q)
        return frozenset(seen)

    def step(self, states: frozenset[int], letter: int) -> frozenset[int]:
        out = set()
        for p in states:
            out.update(self.delta.get(p, {}).get(letter, ()))
        return self.closure(out) if self.has_epsilon else frozenset(out)

    def accepts(self, word: Word) -> bool:
        current = self.closure(self.initial)
        for x in word:
            current = self.step(current, x)
            if not current:
                return False
        return not current.isdisjoint(self.final)

    def __contains__(self, word: Word) -> bool:
        return self.accepts(word)

    def to_dict(self) -> dict:
        def name(x: int) -> str:
            return "eps" if x == EPSILON else self.alphabet.token(x)

        return {
            "alphabet": list(self.alphabet.names),
            "states": self.num_states,
            "initial": sorted(self.initial),
            "final": sorted(self.final),
            "transitions": [[p, name(x), q] for p, x, q in self.transitions],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def to_dot(self, name: str = "nfa") -> str:
        lines = [f"digraph {name} {{", "  rankdir=LR;"]
        for s in range(self.num_states):
            shape = "doublecircle" if s in self.final else "circle"
            lines.append(f"  {s} [shape={shape}];")
        for s in sorted(self.initial):
            lines.append(f"  start{s} [shape=point]; start{s} -> {s};")
        for p, x, q in self.transitions:
            label = "&epsilon;" if x == EPSILON else self.alphabet.token(x)
            lines.append(f"  {p} -> {q} [label=\"{label}\"];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _budget_check(count: int, budget: int | None) -> None:
    if budget is not None and count > budget:
        raise StateBudgetExceeded(f"construction exceeded the state budget of {budget}")


def _check(a: WordNFA, b: WordNFA) -> None:
    if a.alphabet != b.alphabet:
        raise AlphabetMismatchError("NFAs over different alphabets")


class StateBuilder:
    """Allocates dense ids for hashable state keys while exploring."""

    def __init__(self, budget: int | None = None):
        self.ids: dict[Hashable, int] = {}
        self.queue: deque = deque()
        self.transitions: list[Transition] = []
        self.budget = budget

    def state(self, key: Hashable) -> int:
        sid = self.ids.get(key)
        if sid is None:
            sid = len(self.ids)
            _budget_check(sid + 1, self.budget)
            self.ids[key] = sid
            self.queue.append(key)
        return sid


# -- elementary languages ------------------------------------------------------------


def empty_nfa(alphabet: Alphabet) -> WordNFA:
    return WordNFA(alphabet, 1, (), {0}, ())


def identity_nfa(alphabet: Alphabet) -> WordNFA:
    """Accepts only the empty word."""
    return WordNFA(alphabet, 1, (), {0}, {0})


def word_nfa(alphabet: Alphabet, word: Word) -> WordNFA:
    alphabet.check(word)
    trans = [(i, x, i + 1) for i, x in enumerate(word)]
    return WordNFA(alphabet, len(word) + 1, trans, {0}, {len(word)})


def letters_nfa(alphabet: Alphabet, letters: Iterable[int]) -> WordNFA:
    """Single-letter words from ``letters``."""
    return WordNFA(alphabet, 2, [(0, x, 1) for x in letters], {0}, {1})


def star_nfa(alphabet: Alphabet, letters: Iterable[int]) -> WordNFA:
    """All words over ``letters``."""
    return WordNFA(alphabet, 1, [(0, x, 0) for x in letters], {0}, {0})


def reduced_words_nfa(alphabet: Alphabet) -> WordNFA:
    """R_A: state 0 is the start, state ``k`` remembers the last letter read."""
    letters = alphabet.letters()
    sid = {x: i + 1 for i, x in enumerate(letters)}
    trans = [(0, x, sid[x]) for x in letters]
    trans += [(sid[y], x, sid[x]) for y in letters for x in letters if x != -y]
    return WordNFA(alphabet, len(letters) + 1, trans, {0}, range(len(letters) + 1))


def cyclically_reduced_nfa(alphabet: Alphabet) -> WordNFA:
    """C_A: states remember (first letter, last letter)."""
    letters = alphabet.letters()
    sid = {(f, l): 1 + i for i, (f, l) in enumerate((f, l) for f in letters for l in letters)}
    trans = [(0, x, sid[(x, x)]) for x in letters]
    for (f, l), s in sid.items():
        for x in letters:
            if x != -l:
                trans.append((s, x, sid[(f, x)]))
    final = {0} | {s for (f, l), s in sid.items() if l != -f}
    return WordNFA(alphabet, len(sid) + 1, trans, {0}, final)


def walk_nfa(aut: Automaton, sources: Iterable[int], targets: Iterable[int]) -> WordNFA:
    """L_PQ: labels of all walks (reduced or not) from a vertex in P to one in Q."""
    trans = []
    for p, a, q in aut.arcs:
        trans.append((p, a, q))
        trans.append((q, -a, p))
    return WordNFA(aut.alphabet, aut.num_vertices, trans, sources, targets)


# -- operations ---------------------------------------------------------------------


def remove_epsilon(nfa: WordNFA) -> WordNFA:
    if not nfa.has_epsilon:
        return nfa
    closures = [nfa.closure([s]) for s in range(nfa.num_states)]
    trans = set()
    final = set()
    for s in range(nfa.num_states):
        if not closures[s].isdisjoint(nfa.final):
            final.add(s)
        for t in closures[s]:
            for x, targets in nfa.delta.get(t, {}).items():
                if x != EPSILON:
                    trans.update((s, x, q) for q in targets)
    return trim(WordNFA(nfa.alphabet, nfa.num_states, tuple(trans), nfa.initial, final))


def trim(nfa: WordNFA) -> WordNFA:
    """Keep states both reachable from an initial state and co-reachable to a final one."""
    fwd: dict[int, set[int]] = {}
    bwd: dict[int, set[int]] = {}
    for p, _, q in nfa.transitions:
        fwd.setdefault(p, set()).add(q)
        bwd.setdefault(q, set()).add(p)

    def reach(seeds, graph):
        seen = set(seeds)
        stack = list(seen)
        while stack:
            p = stack.pop()
            for q in graph.get(p, ()):
                if q not in seen:
                    seen.add(q)
                    stack.append(q)
        return seen

    useful = reach(nfa.initial, fwd) & reach(nfa.final, bwd)
    if not useful:
        return empty_nfa(nfa.alphabet)
    order = sorted(useful)
    index = {s: i for i, s in enumerate(order)}
    trans = [(index[p], x, index[q]) for p, x, q in nfa.transitions if p in index and q in index]
    return WordNFA(
        nfa.alphabet,
        len(order),
        trans,
        [index[s] for s in nfa.initial if s in index],
        [index[s] for s in nfa.final if s in index],
    )


def union(*nfas: WordNFA) -> WordNFA:
    if not nfas:
        raise ValueError("union of no automata")
    for other in nfas[1:]:
        _check(nfas[0], other)
    trans, initial, final = [], [], []
    offset = 0
    for a in nfas:
        trans += [(p + offset, x, q + offset) for p, x, q in a.transitions]
        initial += [s + offset for s in a.initial]
        final += [s + offset for s in a.final]
        offset += a.num_states
    return WordNFA(nfas[0].alphabet, offset, trans, initial, final)


def concat(a: WordNFA, b: WordNFA) -> WordNFA:
    _check(a, b)
    off = a.num_states
    trans = list(a.transitions) + [(p + off, x, q + off) for p, x, q in b.transitions]
    trans += [(f, EPSILON, i + off) for f in a.final for i in b.initial]
    return WordNFA(a.alphabet, off + b.num_states, trans, a.initial, [f + off for f in b.final])


def intersect(a: WordNFA, b: WordNFA, budget: int | None = DEFAULT_STATE_BUDGET) -> WordNFA:
    """Product automaton restricted to pairs reachable from the initial pairs."""
    _check(a, b)
    a, b = remove_epsilon(a), remove_epsilon(b)
    build = StateBuilder(budget)
    initial = [build.state((p, q)) for p in sorted(a.initial) for q in sorted(b.initial)]
    final = []
    while build.queue:
        p, q = build.queue.popleft()
        sid = build.ids[(p, q)]
        if p in a.final and q in b.final:
            final.append(sid)
        da, db = a.delta.get(p, {}), b.delta.get(q, {})
        for x in sorted(da.keys() & db.keys()):
            for p2 in da[x]:
                for q2 in db[x]:
                    build.transitions.append((sid, x, build.state((p2, q2))))
    return trim(WordNFA(a.alphabet, len(build.ids), build.transitions, initial, final))


def determinize(nfa: WordNFA, budget: int | None = DEFAULT_STATE_BUDGET) -> WordNFA:
    """Subset construction over reachable subsets; the result may be partial."""
    letters = nfa.alphabet.letters()
    build = StateBuilder(budget)
    start = nfa.closure(nfa.initial)
    build.state(start)
    final = []
    while build.queue:
        subset = build.queue.popleft()
        sid = build.ids[subset]
        if not subset.isdisjoint(nfa.final):
            final.append(sid)
        for x in letters:
            nxt = nfa.step(subset, x)
            if nxt:
                build.transitions.append((sid, x, build.state(nxt)))
    return WordNFA(nfa.alphabet, len(build.ids), build.transitions, {0}, final)


def is_deterministic(nfa: WordNFA) -> bool:
    if len(nfa.initial) != 1 or nfa.has_epsilon:
        return False
    return all(len(t) == 1 for row in nfa.delta.values() for t in row.values())


def complete(dfa: WordNFA) -> WordNFA:
    """Add a sink so every state has every letter; expects a deterministic automaton."""
    letters = dfa.alphabet.letters()
    sink = dfa.num_states
    trans = list(dfa.transitions)
    needed = False
    for s in range(dfa.num_states):
        row = dfa.delta.get(s, {})
        for x in letters:
            if x not in row:
                trans.append((s, x, sink))
                needed = True
    if not needed:
        return dfa
    trans += [(sink, x, sink) for x in letters]
    return WordNFA(dfa.alphabet, sink + 1, trans, dfa.initial, dfa.final)


def complement(nfa: WordNFA, budget: int | None = DEFAULT_STATE_BUDGET) -> WordNFA:
    dfa = nfa if is_deterministic(nfa) else determinize(nfa, budget)
    dfa = complete(dfa)
    final = set(range(dfa.num_states)) - dfa.final
    return WordNFA(dfa.alphabet, dfa.num_states, dfa.transitions, dfa.initial, final)


def is_empty(nfa: WordNFA) -> bool:
    return shortest_word(nfa) is None


def shortest_word(nfa: WordNFA) -> Word | None:
    """A shortest accepted word (first in a, a^-1, b, ... order among equals)."""
    start = nfa.closure(nfa.initial)
    seen = {start}
    queue = deque([(start, ())])
    letters = nfa.alphabet.letters()
    while queue:
        subset, word = queue.popleft()
        if not subset.isdisjoint(nfa.final):
            return word
        for x in letters:
            nxt = nfa.step(subset, x)
            if nxt and nxt not in seen:
                seen.add(nxt)
                queue.append((nxt, word + (x,)))
    return None


def accepted_words(nfa: WordNFA, max_length: int) -> list[Word]:
    """Every accepted word of length at most ``max_length`` in shortlex order."""
    out = []
    frontier = [((), nfa.closure(nfa.initial))]
    letters = nfa.alphabet.letters()
    for length in range(max_length + 1):
        nxt_frontier = []
        for word, subset in frontier:
            if not subset.isdisjoint(nfa.final):
                out.append(word)
            if length < max_length:
                for x in letters:
                    nxt = nfa.step(subset, x)
                    if nxt:
                        nxt_frontier.append((word + (x,), nxt))
        frontier = nxt_frontier
    return out
