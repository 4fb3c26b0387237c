import random

import pytest
from helpers import gen

from stallings.cocycles import direct_cr_cocycle_nfa
from stallings.complements import (
    construct_direct_complement,
    detect_direct_cocyclic,
    has_meet_complement,
    proper_join_complement,
)
from stallings.corank import join_corank
from stallings.errors import PreconditionError
from stallings.lattice import Subgroup, conjugate, index_of, intersect, join
from stallings.nfa import is_empty
from stallings.sampling import random_permutation_automaton, random_subgroup
from stallings.words import Alphabet

F1 = Alphabet.standard(1)
F2 = Alphabet.standard(2)
F3 = Alphabet.standard(3)


class TestProperJoinComplement:
    @pytest.mark.parametrize(
        "alphabet, words, expected",
        [
            (F1, ("aa",), ("aaa",)),
            (F2, ("aba",), ("ababABA", "baB")),
            (F2, ("ba",), ("babAB", "a")),
        ],
    )
    def test_examples(self, alphabet, words, expected):
        assert proper_join_complement(gen(alphabet, *words)) == gen(alphabet, *expected)

    def test_trivial_rejected(self):
        with pytest.raises(PreconditionError):
            proper_join_complement(Subgroup.trivial(F2))

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_random(self, n):
        rng = random.Random(50 + n)
        for _ in range(25):
            h = random_subgroup(rng, n, 6)
            k = proper_join_complement(h)
            assert not k.is_full
            assert join(h, k).is_full
            assert k.rank == n

    def test_conjugated_input(self):
        h = gen(F2, "Bab")
        k = proper_join_complement(h)
        assert join(h, k).is_full and not k.is_full


class TestMeetComplement:
    @pytest.mark.parametrize(
        "words, expected", [(("a", "bb"), True), (("a", "baB", "bb"), False), (("a", "b"), False), ((), True)]
    )
    def test_examples(self, words, expected):
        assert has_meet_complement(gen(F2, *words)) is expected

    def test_finite_index_meets_every_nontrivial_cyclic(self):
        rng = random.Random(55)
        for _ in range(10):
            h = Subgroup.from_automaton(random_permutation_automaton(rng, 2, rng.randint(1, 4)))
            assert not has_meet_complement(h)
            assert not intersect(h, gen(F2, "abAB")).is_trivial


class TestDirectComplement:
    def test_running_example(self, h_ab2):
        cert = construct_direct_complement(h_ab2)
        assert F2.format(cert.conjugator) == "ba"
        assert F2.format(cert.loop) == "bb"
        assert cert.letter == 1
        assert cert.complement == gen(F2, "b", "AbbababAbba")
        hg = conjugate(h_ab2, cert.conjugator)
        assert join(hg, cert.complement).is_full
        assert intersect(hg, cert.complement).is_trivial

    def test_original_complement(self, h_ab2):
        cert = construct_direct_complement(h_ab2)
        k = cert.original_complement
        assert join(h_ab2, k).is_full and intersect(h_ab2, k).is_trivial

    def test_to_dict(self, h_ab2):
        data = construct_direct_complement(h_ab2).to_dict(F2)
        assert data["conjugator"] == "ba"
        assert data["complement_generators"] == ["b", "AbbababAbba"]
        # g K g^-1 with g = ba
        assert data["original_complement_generators"] == ["babAB", "bbbababAb"]
        assert data["verified"] is True

    @pytest.mark.parametrize("n", [2, 3])
    def test_random(self, n):
        rng = random.Random(60 + n)
        for _ in range(15):
            h = random_subgroup(rng, n, 6, infinite_index=True)
            cert = construct_direct_complement(h)
            hg = conjugate(h, cert.conjugator)
            assert join(hg, cert.complement).is_full
            assert intersect(hg, cert.complement).is_trivial
            assert cert.complement.rank == n

    @pytest.mark.parametrize("words", [("a", "baB", "bb"), ("a", "b"), ()])
    def test_rejected(self, words):
        with pytest.raises(PreconditionError):
            construct_direct_complement(gen(F2, *words))

    def test_rejects_random_finite_index(self):
        rng = random.Random(65)
        for _ in range(5):
            h = Subgroup.from_automaton(random_permutation_automaton(rng, 3, rng.randint(1, 4)))
            with pytest.raises(PreconditionError):
                construct_direct_complement(h)


class TestDirectCocyclic:
    @pytest.mark.parametrize(
        "alphabet, words, expected",
        [
            (F2, ("a", "bb"), True),
            (F3, ("a",), False),
            (F1, (), True),
            (F2, (), False),
            (F2, ("a", "b"), True),
            (F2, ("a", "baB", "bb"), False),
        ],
    )
    def test_examples(self, alphabet, words, expected):
        assert detect_direct_cocyclic(gen(alphabet, *words)) is expected

    def test_bridge_to_nfa(self):
        rng = random.Random(70)
        found = 0
        while found < 10:
            h = random_subgroup(rng, rng.choice([2, 3]), 5, infinite_index=True)
            if join_corank(h).corank != 1:
                continue
            assert detect_direct_cocyclic(h)
            assert not is_empty(direct_cr_cocycle_nfa(h))
            found += 1

    def test_corank_two_has_no_cyclic_complement(self):
        h = gen(F3, "a")
        assert not index_of(h).finite and join_corank(h).corank == 2
        assert not detect_direct_cocyclic(h)
