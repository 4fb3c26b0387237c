"""Seeded random instances for property tests and benchmarks."""

from __future__ import annotations

import random

from .automaton import Automaton
from .lattice import Subgroup, index_of
from .words import Alphabet, Word, free_reduce


def random_word(rng: random.Random, n: int, length: int, reduced: bool = True) -> Word:
    """Uniform reduced word of the given length (or any word if ``reduced`` is false)."""
    out: list[int] = []
    while len(out) < length:
        x = rng.choice([i for a in range(1, n + 1) for i in (a, -a)])
        if reduced and out and out[-1] == -x:
            continue
        out.append(x)
    return tuple(out)


def random_generators(
    rng: random.Random, n: int, max_count: int, max_length: int, min_count: int = 1
) -> list[Word]:
    count = rng.randint(min_count, max_count)
    return [random_word(rng, n, rng.randint(1, max_length)) for _ in range(count)]


def pad(rng: random.Random, n: int, word: Word, insertions: int = 2) -> Word:
    """Insert ``x x^-1`` pairs at random positions (same group element)."""
    w = list(word)
    for _ in range(insertions):
        x = rng.choice([i for a in range(1, n + 1) for i in (a, -a)])
        pos = rng.randint(0, len(w))
        w[pos:pos] = [x, -x]
    assert free_reduce(w) == free_reduce(word)
    return tuple(w)


def random_subgroup(
    rng: random.Random,
    n: int,
    max_vertices: int,
    max_count: int = 3,
    max_length: int = 5,
    nontrivial: bool = True,
    infinite_index: bool | None = None,
) -> Subgroup:
    """Rejection-sample a subgroup whose Stallings automaton is small enough."""
    alphabet = Alphabet.standard(n)
    for _ in range(100_000):
        h = Subgroup.generated_by(alphabet, random_generators(rng, n, max_count, max_length))
        if h.num_vertices > max_vertices or (nontrivial and h.is_trivial):
            continue
        if infinite_index is not None and index_of(h).finite == infinite_index:
            continue
        return h
    raise RuntimeError("no subgroup met the sampling constraints")


def random_permutation_automaton(rng: random.Random, n: int, size: int) -> Automaton:
    """Every letter acts as a random permutation of ``size`` vertices (complete, deterministic)."""
    arcs = []
    for a in range(1, n + 1):
        image = list(range(size))
        rng.shuffle(image)
        arcs += [(v, a, image[v]) for v in range(size)]
    return Automaton(Alphabet.standard(n), size, tuple(arcs))
