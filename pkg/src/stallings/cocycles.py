"""Cocycles: cyclic complements of a subgroup H.

A word u is a join-cocycle when H v <u> = Fn, a meet-cocycle when
H n <u> = 1, and a direct cocycle when both hold.  Each kind has a direct
decision procedure; the languages themselves are described by finite
automata (join cocycles, cyclically reduced meet and direct cocycles) and by
a context-free grammar (all direct cocycles).
"""

from __future__ import annotations

from itertools import combinations, product

from . import grammar as cfg
from . import nfa as fa
from .automaton import read_walk
from .corank import identification_folds_to_bouquet
from .lattice import Subgroup, conjugate, join, rebase
from .nfa import DEFAULT_STATE_BUDGET, EPSILON, StateBuilder, WordNFA
from .words import Word, cyclic_reduce, power

# -- decision procedures --------------------------------------------------------------


def is_join_cocycle(h: Subgroup, u: Word) -> bool:
    h.alphabet.check(u)
    return join(h, Subgroup.generated_by(h.alphabet, [u])).is_full


def is_meet_cocycle(h: Subgroup, u: Word) -> bool:
    """<u> n H = 1, decided by reading w^m where u = v w v^-1 and m = |St(H^v)|."""
    h.alphabet.check(u)
    v, w = cyclic_reduce(u)
    if not w:
        return True
    hv = conjugate(h, v)
    aut = hv.automaton
    return read_walk(aut, aut.basepoint, power(w, aut.num_vertices)) is None


def is_direct_cocycle(h: Subgroup, u: Word) -> bool:
    return is_join_cocycle(h, u) and is_meet_cocycle(h, u)


# -- automata ---------------------------------------------------------------------


def bouquet_join_cocycle_nfa(h: Subgroup) -> WordNFA:
    """Join cocycles when St(H) is a single vertex carrying the loop letters B."""
    alphabet = h.alphabet
    present = h.automaton.letters_present
    missing = [a for a in range(1, alphabet.n + 1) if a not in present]
    reduced = fa.reduced_words_nfa(alphabet)
    if not missing:
        return reduced
    if len(missing) > 1:
        return fa.empty_nfa(alphabet)
    a = missing[0]
    inner = [x for b in sorted(present) for x in (b, -b)]
    trans = [(0, x, 0) for x in inner] + [(0, a, 1), (0, -a, 1)] + [(1, x, 1) for x in inner]
    one_occurrence = WordNFA(alphabet, 2, trans, {0}, {1})
    return fa.intersect(one_occurrence, reduced)


def join_cocycle_nfa(h: Subgroup) -> WordNFA:
    """Reduced words u with H v <u> = Fn.

    Union over ordered pairs p != q whose identification folds St(H) onto the
    full bouquet of the walk labels basepoint -> p followed by q -> basepoint,
    intersected with the reduced words.  Built as two copies of St(H) joined by
    epsilon moves p -> q'.
    """
    aut = h.automaton
    if aut.num_vertices == 1:
        return bouquet_join_cocycle_nfa(h)
    m = aut.num_vertices
    bridges = []
    for p, q in combinations(range(m), 2):
        if identification_folds_to_bouquet(aut, p, q):
            bridges += [(p, EPSILON, m + q), (q, EPSILON, m + p)]
    if not bridges:
        return fa.empty_nfa(h.alphabet)
    trans = []
    for p, a, q in aut.arcs:
        for off in (0, m):
            trans += [(p + off, a, q + off), (q + off, -a, p + off)]
    walks = WordNFA(h.alphabet, 2 * m, trans + bridges, {aut.basepoint}, {m + aut.basepoint})
    return fa.intersect(walks, fa.reduced_words_nfa(h.alphabet))


def power_readable_nfa(h: Subgroup, budget: int | None = DEFAULT_STATE_BUDGET) -> WordNFA:
    """Nonempty words u such that u^m labels a walk from the basepoint (m = |St(H)|).

    Guess-and-verify: the first letter chooses a tuple s of m start vertices
    with s_1 the basepoint and runs the m walks in parallel as a tuple p; the
    word is accepted when each walk ends where the next one started.
    """
    aut = h.automaton
    m = aut.num_vertices
    letters = h.alphabet.letters()
    succ = [{x: aut.successor(v, x) for x in letters} for v in range(m)]

    def advance(tup, x):
        out = []
        for v in tup:
            w = succ[v][x]
            if w is None:
                return None
            out.append(w)
        return tuple(out)

    build = StateBuilder(budget)
    build.state("guess")
    final = []
    while build.queue:
        key = build.queue.popleft()
        sid = build.ids[key]
        if key == "guess":
            for rest in product(range(m), repeat=m - 1):
                s = (aut.basepoint,) + rest
                for x in letters:
                    p = advance(s, x)
                    if p is not None:
                        build.transitions.append((sid, x, build.state((s, p))))
            continue
        s, p = key
        if all(p[i] == s[i + 1] for i in range(m - 1)):
            final.append(sid)
        for x in letters:
            nxt = advance(p, x)
            if nxt is not None:
                build.transitions.append((sid, x, build.state((s, nxt))))
    return WordNFA(h.alphabet, len(build.ids), build.transitions, {0}, final)


def meet_cr_cocycle_nfa(h: Subgroup, budget: int | None = DEFAULT_STATE_BUDGET) -> WordNFA:
    """Cyclically reduced u with <u> n H = 1, together with the empty word."""
    readable = power_readable_nfa(h, budget)
    return fa.intersect(
        fa.complement(readable, budget), fa.cyclically_reduced_nfa(h.alphabet), budget
    )


def direct_cr_cocycle_nfa(h: Subgroup, budget: int | None = DEFAULT_STATE_BUDGET) -> WordNFA:
    return fa.intersect(join_cocycle_nfa(h), meet_cr_cocycle_nfa(h, budget), budget)


# -- grammar ------------------------------------------------------------------------


def _conjugator_frame(h: Subgroup, r: int) -> cfg.SymbolNFA:
    """Words v $ v' with v a walk label basepoint -> r and v' one r -> basepoint."""
    aut = h.automaton
    m = aut.num_vertices
    frame = cfg.SymbolNFA(2 * m, initial={aut.basepoint}, final={m + aut.basepoint})
    for p, a, q in aut.arcs:
        for off in (0, m):
            frame.add(p + off, a, q + off)
            frame.add(q + off, -a, p + off)
    frame.add(r, cfg.DOLLAR, m + r)
    return frame


def direct_cocycle_grammar(h: Subgroup, budget: int | None = DEFAULT_STATE_BUDGET) -> cfg.Grammar:
    """Grammar generating exactly the reduced words u with H (+) <u> = Fn.

    For each vertex r, the palindromic words v $ v^-1 are cut down to those
    with v reading basepoint -> r, then $ is replaced by the cyclically
    reduced direct cocycles of the subgroup seen from r.  The union over r is
    intersected with the reduced words.
    """
    alphabet = h.alphabet
    aut = h.automaton
    if aut.num_vertices == 1:
        if h.is_full:
            base = cfg.Grammar(alphabet, "S", (("S", ()),))
        else:
            # meet side is automatic: a single occurrence of the missing letter
            # gives nonzero exponent sum, so no power lies in H
            base = cfg.right_linear(fa.trim(join_cocycle_nfa(h)))
        return cfg.renumber(cfg.trim(base))

    palindromes = cfg.palindrome_grammar(alphabet)
    pieces = []
    for r in range(aut.num_vertices):
        hr, _ = rebase(h, r)
        k_r = direct_cr_cocycle_nfa(hr, budget)
        if fa.is_empty(k_r):
            continue
        framed = cfg.bar_hillel(palindromes, _conjugator_frame(h, r), label=("frame", r))
        if framed.is_empty:
            continue
        pieces.append(cfg.substitute(framed, cfg.DOLLAR, cfg.right_linear(k_r), label=("K", r)))
    if not pieces:
        return cfg.Grammar(alphabet, "S", ())
    combined = cfg.union(alphabet, pieces)
    reduced = cfg.SymbolNFA.from_word_nfa(fa.reduced_words_nfa(alphabet))
    return cfg.renumber(cfg.trim(cfg.bar_hillel(combined, reduced, label="reduced")))


def shortest_direct_cr_cocycle(h: Subgroup, budget: int | None = DEFAULT_STATE_BUDGET) -> Word | None:
    """A shortest nontrivial cyclically reduced direct cocycle, if any."""
    nfa = fa.intersect(
        direct_cr_cocycle_nfa(h, budget), fa.complement(fa.identity_nfa(h.alphabet)), budget
    )
    return fa.shortest_word(nfa)
