"""Join-corank: the least rank of a subgroup K with H v K = Fn.

Two independent algorithms are provided.  :func:`join_corank` searches
identification sets of vertex pairs by increasing size and returns a
certificate with an explicit complement; :func:`join_corank_recursive`
identifies one pair at a time with memoization and serves as a cross-check.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb

from .automaton import Automaton, fold, quotient_pairs, stallings_reduce, tree_labels
from .errors import PreconditionError
from .lattice import Subgroup, join
from .words import Alphabet, Word, free_reduce, inverse, power

# Number of leaf subsets above which a search level is spread over processes.
PARALLEL_THRESHOLD = 20_000


@dataclass(frozen=True)
class CorankCertificate:
    corank: int
    letters_present: int
    identification_set: tuple[tuple[int, int], ...]
    witness: tuple[Word, ...]

    def to_dict(self, alphabet: Alphabet) -> dict:
        return {
            "corank": self.corank,
            "letters_present": self.letters_present,
            "identification_set": [list(p) for p in self.identification_set],
            "witness": [alphabet.format(w) for w in self.witness],
        }


@lru_cache(maxsize=65536)
def identification_folds_to_bouquet(aut: Automaton, p: int, q: int) -> bool:
    """Whether identifying p and q and folding leaves the bouquet on the whole alphabet."""
    result, _ = fold(quotient_pairs(aut, [(p, q)]))
    return result.num_vertices == 1 and len(result.arcs) == aut.alphabet.n


def _search_subtree(
    aut: Automaton, pairs: list[tuple[int, int]], size: int, first: int
) -> tuple[int, ...] | None:
    """First identification set (lexicographic in pair indices) starting with pair ``first``.

    The folded prefix is carried down the recursion; a pair whose endpoints
    are already merged by folding the prefix only repeats a smaller set and
    is skipped.
    """

    def descend(current: Automaton, mapping: list[int], chosen: list[int], start: int):
        if len(chosen) == size:
            return tuple(chosen) if current.num_vertices == 1 else None
        remaining = size - len(chosen)
        for i in range(start, len(pairs) - remaining + 1):
            p, q = pairs[i]
            mp, mq = mapping[p], mapping[q]
            if mp == mq:
                continue
            nxt, report = fold(quotient_pairs(current, [(mp, mq)]))
            # quotient_pairs renumbers by first occurrence before folding
            quotient_map = _quotient_map(current.num_vertices, mp, mq)
            composed = [report.merged_vertex_map[quotient_map[m]] for m in mapping]
            chosen.append(i)
            found = descend(nxt, composed, chosen, i + 1)
            chosen.pop()
            if found is not None:
                return found
        return None

    p, q = pairs[first]
    if size == 0:
        return () if aut.num_vertices == 1 else None
    start_aut, report = fold(quotient_pairs(aut, [(p, q)]))
    qmap = _quotient_map(aut.num_vertices, p, q)
    mapping = [report.merged_vertex_map[qmap[v]] for v in range(aut.num_vertices)]
    return descend(start_aut, mapping, [first], first + 1)


def _quotient_map(count: int, p: int, q: int) -> list[int]:
    lo, hi = min(p, q), max(p, q)
    out = []
    for v in range(count):
        if v == hi:
            out.append(out[lo])
        else:
            out.append(v if v < hi else v - 1)
    return out


def _search_level(aut: Automaton, pairs, size: int, jobs: int) -> tuple[int, ...] | None:
    firsts = range(len(pairs) - size + 1)
    if jobs > 1 and comb(len(pairs), size) >= PARALLEL_THRESHOLD:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(
                pool.map(_search_subtree, *zip(*((aut, pairs, size, i) for i in firsts)))
            )
        for found in results:
            if found is not None:
                return found
        return None
    for i in firsts:
        found = _search_subtree(aut, pairs, size, i)
        if found is not None:
            return found
    return None


def join_corank(h: Subgroup, jobs: int = 1) -> CorankCertificate:
    aut = h.automaton
    n = h.alphabet.n
    present = sorted(aut.letters_present)
    n_present = len(present)
    absent = [(a,) for a in range(1, n + 1) if a not in aut.letters_present]
    if aut.num_vertices == 1:
        return CorankCertificate(n - n_present, n_present, (), tuple(absent))

    pairs = list(combinations(range(aut.num_vertices), 2))
    lower = max(n - h.rank, mod2_lower_bound(h), 0)
    first_size = max(1, lower - (n - n_present))
    labels = tree_labels(aut)
    for size in range(first_size, aut.num_vertices):
        found = _search_level(aut, pairs, size, jobs)
        if found is None:
            continue
        chosen = tuple(pairs[i] for i in found)
        witness = [free_reduce(labels[p] + inverse(labels[q])) for p, q in chosen]
        return CorankCertificate(
            n - n_present + size, n_present, chosen, tuple(witness + absent)
        )
    raise AssertionError("identifying every vertex always yields a bouquet")


def join_corank_recursive(h: Subgroup) -> int:
    n = h.alphabet.n

    @lru_cache(maxsize=None)
    def solve(aut: Automaton) -> int:
        if aut.num_vertices == 1:
            return n - len(aut.arcs)
        best = n
        for p, q in combinations(range(aut.num_vertices), 2):
            reduced = stallings_reduce(quotient_pairs(aut, [(p, q)]))
            best = min(best, 1 + solve(reduced))
            if best == 1:
                break
        return best

    return solve(h.automaton)


def corank_witness_check(h: Subgroup, words: list[Word]) -> bool:
    return join(h, Subgroup.generated_by(h.alphabet, words)).is_full


def _parity_vector(word: Word) -> int:
    bits = 0
    for x in word:
        bits ^= 1 << (abs(x) - 1)
    return bits


def gf2_rank(vectors) -> int:
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)


def mod2_lower_bound(h: Subgroup) -> int:
    """n minus the rank of the image of H in (Z/2)^n."""
    return h.alphabet.n - gf2_rank(_parity_vector(w) for w in h.basis)


# -- the test families --------------------------------------------------------------


def _check_family(r: int, c: int, n: int) -> None:
    if n < 2:
        raise PreconditionError("the families need at least two letters")
    if not 1 <= c <= n:
        raise PreconditionError(f"c must lie in [1, {n}], got {c}")
    if r < max(1, n - c):
        raise PreconditionError(f"r must be at least max(1, n - c) = {max(1, n - c)}, got {r}")


def family_h_generators(r: int, c: int, n: int) -> list[Word]:
    """Rank r, join-corank c: loops a_{c+1}..a_n and a chain of r-n+c alternating squares."""
    _check_family(r, c, n)
    a1a2 = (1, 2)
    gens: list[Word] = [(a,) for a in range(c + 1, n + 1)]
    for k in range(r - n + c):
        i = k // 2
        left = power(a1a2, i)
        middle = (1, 1) if k % 2 == 0 else (1, 2, 2, -1)
        gens.append(left + middle + inverse(left))
    return gens


def family_k_generators(r: int, c: int, n: int) -> list[Word]:
    """A join-complement of H(r, c) that also meets it trivially."""
    _check_family(r, c, n)
    gens: list[Word] = [(a,) for a in range(3, c + 1)]
    gens.append((1, 2))
    gens.append((2,) + power((2, 1), r))
    return gens


def family_h(r: int, c: int, n: int) -> Subgroup:
    return Subgroup.generated_by(Alphabet.standard(n), family_h_generators(r, c, n))


def family_k(r: int, c: int, n: int) -> Subgroup:
    return Subgroup.generated_by(Alphabet.standard(n), family_k_generators(r, c, n))


def default_jobs() -> int:
    return os.cpu_count() or 1
