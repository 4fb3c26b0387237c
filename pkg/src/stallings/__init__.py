"""Finitely generated subgroups of free groups through Stallings automata."""

from .automaton import (
    Automaton,
    Classification,
    FoldReport,
    bouquet,
    canonicalize,
    classify,
    core_trim,
    flower,
    fold,
    graph_rank,
    quotient_pairs,
    quotient_vertices,
    read_walk,
    spanning_tree_basis,
    stallings_of,
    sum_automata,
)
from .cocycles import (
    direct_cocycle_grammar,
    direct_cr_cocycle_nfa,
    is_direct_cocycle,
    is_join_cocycle,
    is_meet_cocycle,
    join_cocycle_nfa,
    meet_cr_cocycle_nfa,
)
from .complements import (
    DirectComplementCertificate,
    construct_direct_complement,
    detect_direct_cocyclic,
    has_meet_complement,
    proper_join_complement,
)
from .corank import (
    CorankCertificate,
    corank_witness_check,
    family_h,
    family_k,
    join_corank,
    join_corank_recursive,
    mod2_lower_bound,
)
from .errors import (
    AlphabetMismatchError,
    NotDeterministicError,
    PreconditionError,
    StallingsError,
    StateBudgetExceeded,
    WordParseError,
)
from .grammar import Grammar, grammar_membership
from .lattice import IndexResult, Subgroup, conjugate, index_of, intersect, join, membership, rebase
from .nfa import WordNFA
from .words import Alphabet, CyclicDecomposition, cyclic_reduce, free_reduce, inverse

__version__ = "0.1.0"
