"""Shared constructors and independent oracles for the test suite."""

from stallings.lattice import Subgroup
from stallings.words import Word, free_reduce


def gen(alphabet, *words):
    return Subgroup.generated_by(alphabet, [alphabet.parse(w) for w in words])


def exponent_sum(word: Word, letter: int) -> int:
    return sum(1 if x == letter else -1 if x == -letter else 0 for x in word)


def permutation_stabilizes(perms: dict[int, list[int]], word: Word, start: int = 0) -> bool:
    """Act on points by letter permutations (inverse letters by inverse permutations)."""
    inverses = {a: {v: k for k, v in enumerate(p)} for a, p in perms.items()}
    point = start
    for x in word:
        point = perms[x][point] if x > 0 else inverses[-x][point]
    return point == start


def products_of_generators(gens, max_factors: int):
    """Reduced products of at most ``max_factors`` generators or their inverses."""
    letters = list(gens) + [tuple(-x for x in reversed(g)) for g in gens]
    layer = {()}
    seen = set(layer)
    for _ in range(max_factors):
        layer = {free_reduce(w + g) for w in layer for g in letters} - seen
        seen |= layer
    return seen
