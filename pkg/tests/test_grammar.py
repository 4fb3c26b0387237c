from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stallings.grammar import (
    DOLLAR,
    Grammar,
    SymbolNFA,
    bar_hillel,
    format_grammar,
    grammar_from_mapping,
    grammar_membership,
    is_terminal,
    palindrome_grammar,
    renumber,
    right_linear,
    substitute,
    trim,
    union,
)
from stallings.nfa import WordNFA, cyclically_reduced_nfa, reduced_words_nfa
from stallings.words import Alphabet

F1 = Alphabet.standard(1)
F2 = Alphabet.standard(2)


def all_words(alphabet, max_length):
    for k in range(max_length + 1):
        yield from product(alphabet.letters(), repeat=k)


def fixpoint_derives(g: Grammar, word) -> bool:
    """Saturate the set of facts (X, i, j): X derives word[i:j]."""
    n = len(word)
    facts: set = set()

    def spans(rhs, i):
        # every end position reachable by matching rhs from position i
        ends = {i}
        for s in rhs:
            nxt = set()
            for e in ends:
                if is_terminal(s):
                    if e < n and word[e] == s:
                        nxt.add(e + 1)
                else:
                    nxt |= {j for (x, a, j) in facts if x == s and a == e}
            ends = nxt
        return ends

    changed = True
    while changed:
        changed = False
        for lhs, rhs in g.productions:
            for i in range(n + 1):
                for j in spans(rhs, i):
                    if (lhs, i, j) not in facts:
                        facts.add((lhs, i, j))
                        changed = True
    return (g.start, 0, n) in facts


small_grammars = st.builds(
    lambda rules: Grammar(F1, 0, tuple((lhs, tuple(rhs)) for lhs, rhs in rules)),
    st.lists(
        st.tuples(
            st.integers(0, 2).map(lambda i: ("X", i)),
            st.lists(st.one_of(st.sampled_from([1, -1]), st.integers(0, 2).map(lambda i: ("X", i))), max_size=3),
        ),
        max_size=7,
    ),
).map(lambda g: Grammar(g.alphabet, ("X", 0), g.productions))


class TestMembership:
    def test_palindromes_with_substitution(self):
        pal = substitute(palindrome_grammar(F2), DOLLAR, grammar_from_mapping(F2, "T", {"T": [(2,)]}))
        assert grammar_membership(pal, F2.parse("abA"))
        assert grammar_membership(pal, F2.parse("b"))
        assert not grammar_membership(pal, F2.parse("ab"))
        assert not grammar_membership(pal, F2.parse("abB"))

    def test_epsilon_and_unit_cycles(self):
        g = grammar_from_mapping(F1, "S", {"S": [("T",), ()], "T": [("S",), (1, "S")]})
        assert [w for w in all_words(F1, 3) if g.accepts(w)] == [(), (1,), (1, 1), (1, 1, 1)]

    def test_placeholder_is_rejected_by_words(self):
        assert not grammar_membership(palindrome_grammar(F1), ())

    @settings(max_examples=80, deadline=None)
    @given(small_grammars)
    def test_cyk_matches_fixpoint_oracle(self, g):
        for w in all_words(F1, 4):
            assert g.accepts(w) == fixpoint_derives(g, w)


class TestConstructions:
    def test_right_linear(self):
        nfa = cyclically_reduced_nfa(F2)
        g = right_linear(nfa)
        for w in all_words(F2, 3):
            assert g.accepts(w) == nfa.accepts(w)

    def test_union(self):
        a = grammar_from_mapping(F2, "S", {"S": [(1,)]})
        b = grammar_from_mapping(F2, "S", {"S": [(2, 2)]})
        u = union(F2, [a, b])
        assert [w for w in all_words(F2, 2) if u.accepts(w)] == [(1,), (2, 2)]

    def test_trim(self):
        g = grammar_from_mapping(F1, "S", {"S": [(1,), ("Dead",)], "Dead": [("Dead", 1)], "Lost": [(1,)]})
        assert trim(g).productions == (("S", (1,)),)

    def test_trim_empty_language(self):
        g = grammar_from_mapping(F1, "S", {"S": [("S", 1)]})
        assert trim(g).is_empty

    def test_renumber(self):
        g = grammar_from_mapping(F1, ("x",), {("x",): [(1, ("y",))], ("y",): [()]})
        r = renumber(g)
        assert r.start == "S"
        assert r.productions == (("S", (1, "N1")), ("N1", ()))


class TestBarHillel:
    def test_palindromes_meet_reduced(self):
        pal = palindrome_grammar(F2)
        reduced = SymbolNFA.from_word_nfa(reduced_words_nfa(F2))
        # the placeholder moves freely through every state of R_A
        for s in range(reduced.num_states):
            reduced.add(s, DOLLAR, s)
        g = substitute(bar_hillel(pal, reduced), DOLLAR, grammar_from_mapping(F2, "T", {"T": [()]}))
        accepted = [w for w in all_words(F2, 4) if g.accepts(w)]
        # v v^-1 is reduced only when v is empty
        assert accepted == [()]

    def test_against_brute_force(self):
        g = grammar_from_mapping(F2, "S", {"S": [(1, "S", 2), ("T",)], "T": [(), (-2, "T")]})
        for target in (reduced_words_nfa(F2), cyclically_reduced_nfa(F2)):
            bh = bar_hillel(g, SymbolNFA.from_word_nfa(target))
            for w in all_words(F2, 4):
                assert bh.accepts(w) == (g.accepts(w) and target.accepts(w)), w

    @settings(max_examples=40, deadline=None)
    @given(small_grammars, st.integers(1, 3), st.lists(st.tuples(st.integers(0, 2), st.sampled_from([1, -1]), st.integers(0, 2)), max_size=6))
    def test_random(self, g, size, trans):
        nfa = WordNFA(F1, size, [(p % size, x, q % size) for p, x, q in trans], {0}, {size - 1})
        bh = bar_hillel(g, SymbolNFA.from_word_nfa(nfa))
        for w in all_words(F1, 4):
            assert bh.accepts(w) == (fixpoint_derives(g, w) and nfa.accepts(w))


class TestFormat:
    def test_palindrome(self):
        text = format_grammar(palindrome_grammar(F1))
        assert text == "S -> $ | a S A | A S a\n"

    def test_epsilon_prints_as_one(self):
        assert renumber(grammar_from_mapping(F1, "S", {"S": [(), (1, "S")]})).format() == "S -> 1 | a S\n"

    def test_clash_brackets(self):
        names = Alphabet(("n", "s"))
        g = renumber(grammar_from_mapping(names, "S", {"S": [(1, "S", -2), ()]}))
        assert g.format() == "<S> -> n <S> S | 1\n"

    def test_empty(self):
        assert format_grammar(Grammar(F1, "S", ())) == ""

    @pytest.mark.parametrize("symbol, expected", [(1, True), (-3, True), (DOLLAR, True), ("S", False), (True, False)])
    def test_is_terminal(self, symbol, expected):
        assert is_terminal(symbol) is expected

