import random
from math import factorial

import pytest
from helpers import gen

from stallings.automaton import read_walk
from stallings.cocycles import (
    bouquet_join_cocycle_nfa,
    direct_cocycle_grammar,
    direct_cr_cocycle_nfa,
    is_direct_cocycle,
    is_join_cocycle,
    is_meet_cocycle,
    join_cocycle_nfa,
    meet_cr_cocycle_nfa,
    power_readable_nfa,
    shortest_direct_cr_cocycle,
)
from stallings.errors import StateBudgetExceeded
from stallings.lattice import Subgroup, conjugate, conjugate_word, intersect, membership
from stallings.nfa import is_empty
from stallings.sampling import random_subgroup, random_word
from stallings.words import Alphabet, is_cyclically_reduced, power, reduced_words_upto

F1 = Alphabet.standard(1)
F2 = Alphabet.standard(2)
F3 = Alphabet.standard(3)


def w2(text):
    return F2.parse(text)


class TestDecisionProcedures:
    @pytest.mark.parametrize("u, expected", [("b", True), ("a", False), ("B", True), ("abA", True), ("1", False)])
    def test_join(self, h_ab2, u, expected):
        assert is_join_cocycle(h_ab2, w2(u)) is expected

    def test_join_identity_of_full_group(self):
        assert is_join_cocycle(Subgroup.full(F2), ())

    @pytest.mark.parametrize("u, expected", [("b", False), ("ab", True), ("abA", False), ("1", True), ("a", False), ("bab", True)])
    def test_meet(self, h_ab2, u, expected):
        assert is_meet_cocycle(h_ab2, w2(u)) is expected

    @pytest.mark.parametrize("u, expected", [("ab", True), ("aabA", True), ("abA", False), ("b", False), ("ba", True)])
    def test_direct(self, h_ab2, u, expected):
        assert is_direct_cocycle(h_ab2, w2(u)) is expected

    @pytest.mark.parametrize("m, n", [(m, n) for m in range(6) for n in range(6)])
    def test_powers_of_a_around_b(self, h_ab2, m, n):
        u = power((1,), m) + (2,) + power((-1,), n)
        assert is_direct_cocycle(h_ab2, u) == (m != n)
        if m == n:
            assert is_join_cocycle(h_ab2, u)

    def test_meet_against_intersection(self):
        rng = random.Random(21)
        for _ in range(15):
            h = random_subgroup(rng, 2, 5)
            for u in reduced_words_upto(2, 4):
                expected = intersect(h, Subgroup.generated_by(F2, [u])).is_trivial
                assert is_meet_cocycle(h, u) == expected, (h, u)

    def test_power_consistency(self):
        # for cyclically reduced u: no u^k in H for k <= m, iff u^(m!) not in H, iff u^m is unreadable
        rng = random.Random(22)
        for _ in range(30):
            h = random_subgroup(rng, 2, 5)
            m = h.num_vertices
            for u in reduced_words_upto(2, 3):
                if not u or not is_cyclically_reduced(u):
                    continue
                small = not any(membership(h, power(u, k)) for k in range(1, m + 1))
                big = not membership(h, power(u, factorial(m)))
                unreadable = read_walk(h.automaton, 0, power(u, m)) is None
                assert small == big == unreadable

    def test_conjugation_equivariance(self):
        rng = random.Random(23)
        for _ in range(20):
            h = random_subgroup(rng, 2, 4)
            g = random_word(rng, 2, rng.randint(1, 3))
            hg = conjugate(h, g)
            for _ in range(10):
                u = random_word(rng, 2, rng.randint(1, 5))
                assert is_direct_cocycle(h, u) == is_direct_cocycle(hg, conjugate_word(u, g))


class TestJoinNFA:
    def test_running_example(self, h_ab2):
        nfa = join_cocycle_nfa(h_ab2)
        assert nfa.accepts(w2("b")) and not nfa.accepts(w2("a"))

    def test_bouquet_missing_one_letter(self):
        nfa = join_cocycle_nfa(gen(F2, "a"))
        assert nfa.accepts(w2("aba")) and not nfa.accepts(())
        assert not nfa.accepts(w2("bab"))

    def test_full_group_accepts_everything_reduced(self):
        nfa = bouquet_join_cocycle_nfa(Subgroup.full(F2))
        assert nfa.accepts(()) and nfa.accepts(w2("abAB"))
        assert not nfa.accepts((1, -1))

    def test_two_missing_letters(self):
        assert is_empty(join_cocycle_nfa(gen(F3, "a")))
        assert is_empty(join_cocycle_nfa(Subgroup.trivial(F2)))

    def test_trivial_in_f1(self):
        nfa = join_cocycle_nfa(Subgroup.trivial(F1))
        assert [w for w in reduced_words_upto(1, 3) if nfa.accepts(w)] == [(1,), (-1,)]

    @pytest.mark.parametrize("n, max_length", [(2, 5), (3, 3)])
    def test_agrees_with_decision(self, n, max_length):
        rng = random.Random(30 + n)
        alphabet = Alphabet.standard(n)
        for _ in range(8):
            h = random_subgroup(rng, n, 5, nontrivial=False)
            nfa = join_cocycle_nfa(h)
            for w in reduced_words_upto(n, max_length):
                assert nfa.accepts(w) == is_join_cocycle(h, w), (h, alphabet.format(w))


class TestMeetAndDirectNFA:
    @pytest.mark.parametrize("u, expected", [("b", False), ("ab", True), ("1", True)])
    def test_meet_examples(self, h_ab2, u, expected):
        assert meet_cr_cocycle_nfa(h_ab2).accepts(w2(u)) is expected

    @pytest.mark.parametrize("u, expected", [("ab", True), ("b", False), ("ba", True), ("abA", False)])
    def test_direct_examples(self, h_ab2, u, expected):
        assert direct_cr_cocycle_nfa(h_ab2).accepts(w2(u)) is expected

    def test_power_readable(self, h_ab2):
        nfa = power_readable_nfa(h_ab2)
        assert nfa.accepts(w2("b")) and nfa.accepts(w2("a")) and not nfa.accepts(w2("ab"))
        assert not nfa.accepts(())

    def test_agrees_with_decision(self):
        rng = random.Random(40)
        for _ in range(8):
            h = random_subgroup(rng, 2, 4)
            meet, direct = meet_cr_cocycle_nfa(h), direct_cr_cocycle_nfa(h)
            for w in reduced_words_upto(2, 5):
                if not is_cyclically_reduced(w):
                    assert not meet.accepts(w)
                    continue
                assert meet.accepts(w) == is_meet_cocycle(h, w)
                assert direct.accepts(w) == is_direct_cocycle(h, w)

    def test_budget(self):
        h = gen(F2, "aab", "bbaB")
        with pytest.raises(StateBudgetExceeded):
            meet_cr_cocycle_nfa(h, budget=10)

    def test_shortest(self, h_ab2):
        assert shortest_direct_cr_cocycle(h_ab2) == w2("ab")
        assert shortest_direct_cr_cocycle(gen(F3, "a")) is None


class TestGrammar:
    @pytest.mark.parametrize("u, expected", [("aabA", True), ("abA", False), ("b", False), ("ab", True), ("aabAA", False)])
    def test_running_example(self, h_ab2, u, expected):
        assert direct_cocycle_grammar(h_ab2).accepts(w2(u)) is expected

    def test_agrees_with_decision(self, h_ab2):
        g = direct_cocycle_grammar(h_ab2)
        for w in reduced_words_upto(2, 4):
            assert g.accepts(w) == is_direct_cocycle(h_ab2, w), F2.format(w)

    @pytest.mark.parametrize("words", [("a",), ("1",), ("a", "b")])
    def test_bouquets(self, words):
        h = gen(F2, *words)
        g = direct_cocycle_grammar(h)
        for w in reduced_words_upto(2, 4):
            assert g.accepts(w) == is_direct_cocycle(h, w)

    def test_empty_language(self):
        g = direct_cocycle_grammar(gen(F3, "a"))
        assert g.is_empty and g.format() == ""

    def test_printable(self, h_ab2):
        text = direct_cocycle_grammar(h_ab2).format()
        assert text.startswith("S -> ")
        assert "$" not in text
