"""Subgroups as canonical Stallings automata, and the lattice operations on them."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .automaton import (
    Automaton,
    bouquet,
    canonicalize,
    classify,
    core_trim,
    graph_rank,
    read_walk,
    spanning_tree_basis,
    stallings_of,
    stallings_reduce,
    sum_automata,
    tree_labels,
    trivial_automaton,
)
from .errors import AlphabetMismatchError, PreconditionError
from .words import Alphabet, Word, free_reduce, inverse


@dataclass(frozen=True)
class Subgroup:
    """A finitely generated subgroup, identified with its canonical Stallings automaton.

    Two values compare equal exactly when they describe the same subgroup.
    """

    automaton: Automaton

    @classmethod
    def generated_by(cls, alphabet: Alphabet, words: Iterable[Word]) -> "Subgroup":
        return cls(stallings_of(alphabet, words))

    @classmethod
    def from_automaton(cls, aut: Automaton) -> "Subgroup":
        """Subgroup recognized at the basepoint of any (possibly unfolded) automaton."""
        return cls(stallings_reduce(aut))

    @classmethod
    def full(cls, alphabet: Alphabet) -> "Subgroup":
        return cls(bouquet(alphabet))

    @classmethod
    def trivial(cls, alphabet: Alphabet) -> "Subgroup":
        return cls(trivial_automaton(alphabet))

    @property
    def alphabet(self) -> Alphabet:
        return self.automaton.alphabet

    @property
    def num_vertices(self) -> int:
        return self.automaton.num_vertices

    @cached_property
    def rank(self) -> int:
        return graph_rank(self.automaton)

    @cached_property
    def basis(self) -> tuple[Word, ...]:
        return tuple(spanning_tree_basis(self.automaton))

    @property
    def is_trivial(self) -> bool:
        return not self.automaton.arcs

    @property
    def is_full(self) -> bool:
        return self.automaton.num_vertices == 1 and len(self.automaton.arcs) == self.alphabet.n

    def __contains__(self, word: Word) -> bool:
        return membership(self, word)

    def __str__(self) -> str:
        return "<" + ", ".join(self.alphabet.format(w) for w in self.basis) + ">"


@dataclass(frozen=True)
class IndexResult:
    finite: bool
    value: int | None = None

    def __str__(self) -> str:
        return str(self.value) if self.finite else "infinite"


def _check(h: Subgroup, k: Subgroup) -> None:
    if h.alphabet != k.alphabet:
        raise AlphabetMismatchError(
            f"alphabets differ: {h.alphabet.names} vs {k.alphabet.names}"
        )


def membership(h: Subgroup, word: Word) -> bool:
    h.alphabet.check(word)
    aut = h.automaton
    return read_walk(aut, aut.basepoint, free_reduce(word)) == aut.basepoint


def join(h: Subgroup, k: Subgroup) -> Subgroup:
    _check(h, k)
    if k.is_trivial:
        return h
    if h.is_trivial:
        return k
    return Subgroup.from_automaton(sum_automata(h.automaton, k.automaton))


def join_all(alphabet: Alphabet, subgroups: Iterable[Subgroup]) -> Subgroup:
    total = Subgroup.trivial(alphabet)
    for s in subgroups:
        total = join(total, s)
    return total


def conjugate(h: Subgroup, g: Word) -> Subgroup:
    """The subgroup ``g^-1 H g``."""
    h.alphabet.check(g)
    g = free_reduce(g)
    if not g:
        return h
    aut = h.automaton
    arcs = list(aut.arcs)
    prev = aut.basepoint
    count = aut.num_vertices
    for x in g:
        new = count
        count += 1
        arcs.append((prev, x, new) if x > 0 else (new, -x, prev))
        prev = new
    return Subgroup.from_automaton(Automaton(aut.alphabet, count, tuple(arcs), prev))


def rebase(h: Subgroup, vertex: int) -> tuple[Subgroup, Word]:
    """Move the basepoint to ``vertex``; returns ``(u^-1 H u, u)`` with u the tree label."""
    aut = h.automaton
    if not 0 <= vertex < aut.num_vertices:
        raise PreconditionError(f"vertex {vertex} out of range")
    u = tree_labels(aut)[vertex]
    moved = canonicalize(core_trim(aut.with_basepoint(vertex)))
    return Subgroup(moved), u


def index_of(h: Subgroup) -> IndexResult:
    if classify(h.automaton).complete:
        return IndexResult(True, h.num_vertices)
    return IndexResult(False)


def intersect(h: Subgroup, k: Subgroup) -> Subgroup:
    """Basepoint component of the pullback of the two Stallings automata."""
    _check(h, k)
    if h.is_trivial or k.is_trivial:
        return Subgroup.trivial(h.alphabet)
    a1, a2 = h.automaton, k.automaton
    start = (a1.basepoint, a2.basepoint)
    index = {start: 0}
    queue = deque([start])
    arcs = []
    letters = h.alphabet.letters()
    while queue:
        state = queue.popleft()
        p, q = state
        for x in letters:
            p2 = a1.successor(p, x)
            q2 = a2.successor(q, x)
            if p2 is None or q2 is None:
                continue
            nxt = (p2, q2)
            if nxt not in index:
                index[nxt] = len(index)
                queue.append(nxt)
            if x > 0:
                arcs.append((index[state], x, index[nxt]))
    product = Automaton(h.alphabet, len(index), tuple(arcs), 0)
    return Subgroup(canonicalize(core_trim(product)))


def is_subgroup_of(h: Subgroup, k: Subgroup) -> bool:
    _check(h, k)
    return all(membership(k, w) for w in h.basis)


def vertex_labels(h: Subgroup) -> list[Word]:
    return tree_labels(h.automaton)


def conjugate_word(word: Word, g: Word) -> Word:
    """``g^-1 w g`` reduced."""
    return free_reduce(inverse(g) + tuple(word) + tuple(g))
