"""Explicit join-, meet- and direct complements."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import gcd

from .automaton import tree_labels
from .corank import join_corank
from .errors import PreconditionError
from .lattice import Subgroup, conjugate, index_of, intersect, join
from .words import Alphabet, Word, cyclic_reduce, free_reduce, inverse, shortlex_key


def proper_join_complement(h: Subgroup) -> Subgroup:
    """A proper subgroup K of rank n with H v K = Fn.

    A cyclically reduced conjugate w of a basis element already has such a
    complement; conjugating back gives one for H.
    """
    if h.is_trivial:
        raise PreconditionError("the trivial subgroup has no proper join-complement")
    alphabet = h.alphabet
    v, w = cyclic_reduce(h.basis[0])
    n = alphabet.n
    if n == 1:
        k = abs(sum(1 if x > 0 else -1 for x in w))
        l = 2
        while gcd(k, l) != 1:
            l += 1
        gens = [(1,) * l]
    else:
        first, last = abs(w[0]), abs(w[-1])
        around = [w + (b,) + inverse(w) for b in range(1, n + 1) if b != last]
        if w[0] == w[-1]:
            # the loop at the basepoint would make K = Fn; swap it for a^b
            b = min(x for x in range(1, n + 1) if x != first)
            gens = around + [(b, first, -b)]
        else:
            gens = around + [(last,)]
    # H contains v w v^-1, so conjugating by v^-1 moves the complement over
    k_sub = conjugate(Subgroup.generated_by(alphabet, gens), inverse(v))
    if k_sub.is_full or not join(h, k_sub).is_full or k_sub.rank != n:
        raise AssertionError(f"join-complement construction failed for {h}")
    return k_sub


def has_meet_complement(h: Subgroup) -> bool:
    """A nontrivial meet-complement exists exactly for infinite index."""
    return not index_of(h).finite


@dataclass(frozen=True)
class DirectComplementCertificate:
    """``conjugate(H, conjugator)`` and ``complement`` are direct complements.

    ``original_complement`` is the same complement moved back to H itself.
    """

    conjugator: Word
    complement: Subgroup
    original_complement: Subgroup
    letter: int
    loop: Word

    def to_dict(self, alphabet: Alphabet) -> dict:
        return {
            "conjugator": alphabet.format(self.conjugator),
            "complement_generators": [alphabet.format(w) for w in self.complement.basis],
            "original_complement_generators": [
                alphabet.format(w) for w in self.original_complement.basis
            ],
            "verified": True,
        }


def _shortest_reduced_loop(aut, vertex: int) -> Word:
    """Shortest nonempty reduced closed walk at ``vertex``, first in shortlex order."""
    letters = aut.alphabet.letters()
    start = [(x, w) for x, w in aut.neighbours(vertex)]
    start.sort(key=lambda t: shortlex_key((t[0],)))
    seen = set()
    queue = deque()
    for x, w in start:
        if (w, x) not in seen:
            seen.add((w, x))
            queue.append((w, x, (x,)))
    while queue:
        v, last, word = queue.popleft()
        if v == vertex:
            return word
        for x in letters:
            if x == -last:
                continue
            nxt = aut.successor(v, x)
            if nxt is not None and (nxt, x) not in seen:
                seen.add((nxt, x))
                queue.append((nxt, x, word + (x,)))
    raise PreconditionError(f"vertex {vertex} lies on no reduced cycle")


def construct_direct_complement(h: Subgroup) -> DirectComplementCertificate:
    """Direct complement of rank n for a conjugate of H (H nontrivial, proper, infinite index)."""
    if h.is_trivial:
        raise PreconditionError("H is trivial")
    if h.is_full:
        raise PreconditionError("H is the whole free group")
    if index_of(h).finite:
        raise PreconditionError("H has finite index, so it has no nontrivial direct complement")
    alphabet = h.alphabet
    aut = h.automaton
    labels = tree_labels(aut)
    cycle_part = set(_cyclic_core_vertices(aut))

    vertex, letter = None, None
    for v in sorted(cycle_part, key=lambda v: shortlex_key(labels[v])):
        for a in range(1, alphabet.n + 1):
            if aut.successor(v, a) is None:
                vertex, letter = v, a
                break
        if vertex is not None:
            break
    if vertex is None:
        raise AssertionError("an incomplete core automaton has a deficient cycle vertex")

    g = free_reduce(labels[vertex] + (letter,))
    hg = conjugate(h, g)
    new_aut = hg.automaton
    bp = new_aut.basepoint
    if new_aut.degrees[bp] != 1 or new_aut.successor(bp, -letter) is None:
        raise AssertionError("conjugate is not in the expected hanging-arc form")
    v_new = new_aut.successor(bp, -letter)
    u = _shortest_reduced_loop(new_aut, v_new)
    b = min(x for x in range(1, alphabet.n + 1) if x != letter)
    a = letter
    long_word = (-a,) + u + (a, b, a, b, -a) + u + (a,)
    gens = [(x,) for x in range(1, alphabet.n + 1) if x != a] + [long_word]
    k = Subgroup.generated_by(alphabet, gens)

    if not join(hg, k).is_full:
        raise AssertionError("direct complement check failed: join is not the whole group")
    if not intersect(hg, k).is_trivial:
        raise AssertionError("direct complement check failed: intersection is nontrivial")
    if k.rank != alphabet.n:
        raise AssertionError("direct complement has the wrong rank")
    original = conjugate(k, inverse(g))
    return DirectComplementCertificate(g, k, original, a, u)


def _cyclic_core_vertices(aut) -> list[int]:
    """Vertices that survive repeatedly deleting vertices of degree at most 1, basepoint included."""
    degree = list(aut.degrees)
    alive = [True] * aut.num_vertices
    neighbours: list[list[int]] = [[] for _ in range(aut.num_vertices)]
    for p, _, q in aut.arcs:
        neighbours[p].append(q)
        if p != q:
            neighbours[q].append(p)
    stack = [v for v in range(aut.num_vertices) if degree[v] <= 1]
    while stack:
        v = stack.pop()
        if not alive[v]:
            continue
        alive[v] = False
        for w in neighbours[v]:
            if alive[w]:
                degree[w] -= 1
                if degree[w] == 1:
                    stack.append(w)
    return [v for v in range(aut.num_vertices) if alive[v]]


def detect_direct_cocyclic(h: Subgroup) -> bool:
    """Whether H has a cyclic direct complement.

    Boundary conventions: Fn has the trivial complement; the trivial subgroup
    is cocyclic only in rank one.
    """
    if h.is_full:
        return True
    if h.is_trivial:
        return h.alphabet.n == 1
    if index_of(h).finite:
        return False
    return join_corank(h).corank == 1

