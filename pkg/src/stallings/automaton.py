"""Involutive pointed automata stored by their positive arcs.

Every stored arc ``(p, a, q)`` with ``a > 0`` implicitly carries its inverse
``q --a^-1--> p``.  Automata are immutable values; every construction returns
a new one.  The Stallings automaton of a finitely generated subgroup is
obtained by folding a flower and trimming to the core; :func:`canonicalize`
renumbers it so that equal subgroups give equal values.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import AlphabetMismatchError, NotDeterministicError, PreconditionError
from .words import Alphabet, Word, free_reduce, inverse

Arc = tuple[int, int, int]


class UnionFind:
    """Disjoint sets over ``0..size-1``; union by size, path compression."""

    def __init__(self, size: int):
        self.parent = list(range(size))
        self.size = [1] * size

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> tuple[int, int] | None:
        """Merge the classes of x and y; return (kept_root, absorbed_root)."""
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return None
        if self.size[rx] < self.size[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        self.size[rx] += self.size[ry]
        return rx, ry


@dataclass(frozen=True)
class Automaton:
    alphabet: Alphabet
    num_vertices: int
    arcs: tuple[Arc, ...]
    basepoint: int = 0

    def __post_init__(self):
        arcs = tuple(sorted(tuple(arc) for arc in self.arcs))
        object.__setattr__(self, "arcs", arcs)
        if self.num_vertices < 1:
            raise ValueError("an automaton has at least one vertex")
        if not 0 <= self.basepoint < self.num_vertices:
            raise ValueError(f"basepoint {self.basepoint} out of range")
        n = self.alphabet.n
        for p, a, q in arcs:
            if not (0 <= p < self.num_vertices and 0 <= q < self.num_vertices):
                raise ValueError(f"arc {(p, a, q)} has an invalid endpoint")
            if not 1 <= a <= n:
                raise ValueError(f"arc {(p, a, q)} must carry a positive letter of 1..{n}")

    def __add__(self, other: "Automaton") -> "Automaton":
        return sum_automata(self, other)

    @cached_property
    def transitions(self) -> dict[tuple[int, int], list[int]]:
        """``(vertex, signed letter) -> targets`` including implicit inverse arcs."""
        table: dict[tuple[int, int], list[int]] = {}
        for p, a, q in self.arcs:
            table.setdefault((p, a), []).append(q)
            table.setdefault((q, -a), []).append(p)
        return table

    @cached_property
    def is_deterministic(self) -> bool:
        return all(len(targets) == 1 for targets in self.transitions.values())

    def successor(self, vertex: int, letter: int) -> int | None:
        targets = self.transitions.get((vertex, letter))
        if not targets:
            return None
        if len(targets) > 1:
            raise NotDeterministicError(f"vertex {vertex} has several {letter}-arcs")
        return targets[0]

    @cached_property
    def degrees(self) -> list[int]:
        deg = [0] * self.num_vertices
        for p, _, q in self.arcs:
            deg[p] += 1
            deg[q] += 1
        return deg

    @cached_property
    def letters_present(self) -> frozenset[int]:
        return frozenset(a for _, a, _ in self.arcs)

    def neighbours(self, vertex: int) -> Iterable[tuple[int, int]]:
        """(signed letter, target) pairs leaving ``vertex`` in alphabet order."""
        for x in self.alphabet.letters():
            for q in self.transitions.get((vertex, x), ()):
                yield x, q

    def with_basepoint(self, vertex: int) -> "Automaton":
        return Automaton(self.alphabet, self.num_vertices, self.arcs, vertex)

    # -- serialization -------------------------------------------------------

    def to_dict(self) -> dict:
        names = self.alphabet.names
        return {
            "alphabet": list(names),
            "vertices": self.num_vertices,
            "basepoint": self.basepoint,
            "arcs": [[p, names[a - 1], q] for p, a, q in self.arcs],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "Automaton":
        alphabet = Alphabet(tuple(data["alphabet"]))
        index = {name: i + 1 for i, name in enumerate(alphabet.names)}
        try:
            arcs = [(int(p), index[name], int(q)) for p, name, q in data["arcs"]]
        except KeyError as exc:
            raise ValueError(f"arc uses a letter outside the alphabet: {exc}") from None
        return cls(alphabet, int(data["vertices"]), tuple(arcs), int(data.get("basepoint", 0)))

    @classmethod
    def from_json(cls, text: str) -> "Automaton":
        return cls.from_dict(json.loads(text))

    def to_dot(self, name: str = "automaton") -> str:
        lines = [f"digraph {name} {{", "  rankdir=LR;", "  node [shape=circle, label=\"\"];"]
        for v in range(self.num_vertices):
            shape = "doublecircle" if v == self.basepoint else "circle"
            lines.append(f"  {v} [shape={shape}, xlabel=\"{v}\"];")
        for p, a, q in self.arcs:
            lines.append(f"  {p} -> {q} [label=\"{self.alphabet.names[a - 1]}\"];")
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class FoldReport:
    open_folds: int
    closed_folds: int
    merged_vertex_map: tuple[int, ...]


@dataclass(frozen=True)
class Classification:
    deterministic: bool
    complete: bool
    core: bool
    connected: bool
    bouquet: bool
    bouquet_letters: frozenset[int]

    @property
    def reduced(self) -> bool:
        return self.deterministic and self.core

    @property
    def full_bouquet(self) -> bool:
        """A single vertex carrying a loop for every letter of the alphabet."""
        return self.bouquet and self.complete


# -- elementary constructions ---------------------------------------------------


def trivial_automaton(alphabet: Alphabet) -> Automaton:
    return Automaton(alphabet, 1, ())


def bouquet(alphabet: Alphabet, letters: Iterable[int] | None = None) -> Automaton:
    letters = range(1, alphabet.n + 1) if letters is None else sorted(set(letters))
    return Automaton(alphabet, 1, tuple((0, a, 0) for a in letters))


def flower(alphabet: Alphabet, words: Iterable[Word]) -> Automaton:
    """One petal per nonempty word, all petals wedged at vertex 0."""
    arcs: list[Arc] = []
    count = 1
    for word in words:
        alphabet.check(word)
        if not word:
            continue
        path = [0] + list(range(count, count + len(word) - 1)) + [0]
        count += len(word) - 1
        for x, p, q in zip(word, path, path[1:]):
            arcs.append((p, x, q) if x > 0 else (q, -x, p))
    return Automaton(alphabet, count, tuple(arcs))


def _check_same_alphabet(a1: Automaton, a2: Automaton) -> None:
    if a1.alphabet != a2.alphabet:
        raise AlphabetMismatchError(f"alphabets differ: {a1.alphabet.names} vs {a2.alphabet.names}")


def sum_automata(a1: Automaton, a2: Automaton) -> Automaton:
    """Disjoint union of two automata with their basepoints identified."""
    _check_same_alphabet(a1, a2)
    shift: dict[int, int] = {}
    nxt = a1.num_vertices
    for v in range(a2.num_vertices):
        if v == a2.basepoint:
            shift[v] = a1.basepoint
        else:
            shift[v] = nxt
            nxt += 1
    arcs = a1.arcs + tuple((shift[p], a, shift[q]) for p, a, q in a2.arcs)
    return Automaton(a1.alphabet, nxt, arcs, a1.basepoint)


def relabel(aut: Automaton, mapping: Sequence[int], num_vertices: int) -> Automaton:
    arcs = tuple((mapping[p], a, mapping[q]) for p, a, q in aut.arcs)
    return Automaton(aut.alphabet, num_vertices, arcs, mapping[aut.basepoint])


def _compact(classes: Sequence[int]) -> tuple[list[int], int]:
    """Renumber class labels 0.. in order of first occurrence."""
    seen: dict[int, int] = {}
    out = []
    for c in classes:
        if c not in seen:
            seen[c] = len(seen)
        out.append(seen[c])
    return out, len(seen)


def quotient_pairs(aut: Automaton, pairs: Iterable[tuple[int, int]]) -> Automaton:
    """Identify each listed pair of vertices (no folding)."""
    uf = UnionFind(aut.num_vertices)
    for p, q in pairs:
        uf.union(p, q)
    mapping, count = _compact([uf.find(v) for v in range(aut.num_vertices)])
    return relabel(aut, mapping, count)


def quotient_vertices(aut: Automaton, vertices: Iterable[int]) -> Automaton:
    """Identify all vertices of the given nonempty set into one."""
    vs = sorted(set(vertices))
    if not vs:
        raise PreconditionError("cannot take the quotient by an empty vertex set")
    for v in vs:
        if not 0 <= v < aut.num_vertices:
            raise PreconditionError(f"vertex {v} out of range")
    return quotient_pairs(aut, ((vs[0], v) for v in vs[1:]))


# -- folding -------------------------------------------------------------------


def fold(aut: Automaton) -> tuple[Automaton, FoldReport]:
    """Fold until deterministic.

    Each vertex keeps a star ``signed label -> arc``.  Inserting an arc into a
    star that already holds a live arc with the same label is a folding: the
    new arc dies, and the far endpoints are merged at once (open folding) or
    were already equal (closed folding).  The star of an absorbed vertex is
    queued and re-inserted into its new root later (FIFO); stale entries for
    dead arcs are skipped lazily.
    """
    src = [p for p, _, _ in aut.arcs]
    lab = [a for _, a, _ in aut.arcs]
    dst = [q for _, _, q in aut.arcs]
    alive = [True] * len(aut.arcs)
    uf = UnionFind(aut.num_vertices)
    stars: list[dict[int, int]] = [{} for _ in range(aut.num_vertices)]
    pending: deque[int] = deque()
    counts = [0, 0]  # open, closed

    def far_end(e: int, label: int) -> int:
        return dst[e] if label > 0 else src[e]

    def insert(vertex: int, label: int, e: int) -> bool:
        root = uf.find(vertex)
        held = stars[root].get(label)
        if held is not None and held != e and alive[held]:
            alive[e] = False
            x, y = far_end(held, label), far_end(e, label)
            merged = uf.union(x, y)
            if merged is None:
                counts[1] += 1
            else:
                counts[0] += 1
                pending.append(merged[1])
            return False
        stars[root][label] = e
        return True

    for e in range(len(src)):
        if insert(src[e], lab[e], e):
            insert(dst[e], -lab[e], e)

    while pending:
        old = pending.popleft()
        star, stars[old] = stars[old], {}
        for label, e in star.items():
            if alive[e]:
                insert(old, label, e)

    mapping, count = _compact([uf.find(v) for v in range(aut.num_vertices)])
    arcs = tuple(
        (mapping[src[e]], lab[e], mapping[dst[e]]) for e in range(len(src)) if alive[e]
    )
    folded = Automaton(aut.alphabet, count, arcs, mapping[aut.basepoint])
    return folded, FoldReport(counts[0], counts[1], tuple(mapping))


def folded(aut: Automaton) -> Automaton:
    return fold(aut)[0]


# -- graph structure -------------------------------------------------------------


def component_of(aut: Automaton, vertex: int) -> set[int]:
    adjacency: list[list[int]] = [[] for _ in range(aut.num_vertices)]
    for p, _, q in aut.arcs:
        adjacency[p].append(q)
        adjacency[q].append(p)
    seen = {vertex}
    stack = [vertex]
    while stack:
        v = stack.pop()
        for w in adjacency[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def num_components(aut: Automaton) -> int:
    uf = UnionFind(aut.num_vertices)
    for p, _, q in aut.arcs:
        uf.union(p, q)
    return len({uf.find(v) for v in range(aut.num_vertices)})


def graph_rank(aut: Automaton) -> int:
    return len(aut.arcs) - aut.num_vertices + num_components(aut)


def restrict(aut: Automaton, vertices: Iterable[int]) -> Automaton:
    """Induced subautomaton on ``vertices`` (must contain the basepoint)."""
    keep = sorted(set(vertices))
    index = {v: i for i, v in enumerate(keep)}
    arcs = tuple(
        (index[p], a, index[q]) for p, a, q in aut.arcs if p in index and q in index
    )
    return Automaton(aut.alphabet, len(keep), arcs, index[aut.basepoint])


def core_trim(aut: Automaton) -> Automaton:
    """Basepoint component with every hanging tree not containing it removed."""
    if not aut.is_deterministic:
        raise NotDeterministicError("core_trim expects a deterministic automaton")
    comp = component_of(aut, aut.basepoint)
    incident: dict[int, list[int]] = {v: [] for v in comp}
    for i, (p, _, q) in enumerate(aut.arcs):
        if p in comp:
            incident[p].append(i)
            if q != p:
                incident[q].append(i)
    degree = {v: aut.degrees[v] for v in comp}
    removed_arcs: set[int] = set()
    alive = set(comp)

    def prunable(v: int) -> bool:
        return degree[v] <= 1 and v != aut.basepoint

    stack = [v for v in comp if prunable(v)]
    while stack:
        v = stack.pop()
        if v not in alive or not prunable(v):
            continue
        alive.discard(v)
        for i in incident[v]:
            if i in removed_arcs:
                continue
            removed_arcs.add(i)
            p, _, q = aut.arcs[i]
            other = q if p == v else p
            degree[other] -= 1
            if other in alive and prunable(other):
                stack.append(other)
    return restrict(aut, alive)


def classify(aut: Automaton) -> Classification:
    deterministic = aut.is_deterministic
    out_letters: list[set[int]] = [set() for _ in range(aut.num_vertices)]
    for (v, x), targets in aut.transitions.items():
        if targets:
            out_letters[v].add(x)
    full = set(aut.alphabet.letters())
    complete = all(out_letters[v] >= full for v in range(aut.num_vertices))
    connected = num_components(aut) == 1
    core = connected and all(
        aut.degrees[v] >= 2 for v in range(aut.num_vertices) if v != aut.basepoint
    )
    single = aut.num_vertices == 1
    loops = frozenset(a for _, a, _ in aut.arcs) if single else frozenset()
    return Classification(deterministic, complete, core, connected, single, loops)


def is_full_bouquet(aut: Automaton) -> bool:
    """True when ``aut`` folds to nothing but the bouquet on the whole alphabet."""
    return aut.num_vertices == 1 and aut.letters_present == frozenset(range(1, aut.alphabet.n + 1))


# -- walks, trees, canonical form ---------------------------------------------------


def read_walk(aut: Automaton, start: int, word: Iterable[int]) -> int | None:
    """Endpoint of the walk spelling ``word`` from ``start`` or None if it falls off."""
    v: int | None = start
    for x in word:
        v = aut.successor(v, x)
        if v is None:
            return None
    return v


def _bfs(aut: Automaton) -> tuple[list[int], dict[int, Word], set[tuple[int, int, int]]]:
    """BFS from the basepoint; returns (order, tree labels, tree arcs as stored triples)."""
    if not aut.is_deterministic:
        raise NotDeterministicError("expected a deterministic automaton")
    labels: dict[int, Word] = {aut.basepoint: ()}
    order = [aut.basepoint]
    tree: set[tuple[int, int, int]] = set()
    queue = deque([aut.basepoint])
    while queue:
        v = queue.popleft()
        for x, w in aut.neighbours(v):
            if w not in labels:
                labels[w] = labels[v] + (x,)
                order.append(w)
                queue.append(w)
                tree.add((v, x, w) if x > 0 else (w, -x, v))
    return order, labels, tree


def tree_labels(aut: Automaton) -> list[Word]:
    """Label of the canonical BFS-tree path from the basepoint to each vertex."""
    _, labels, _ = _bfs(aut)
    if len(labels) != aut.num_vertices:
        raise PreconditionError("automaton is not connected")
    return [labels[v] for v in range(aut.num_vertices)]


def spanning_tree_basis(aut: Automaton) -> list[Word]:
    _, labels, tree = _bfs(aut)
    if len(labels) != aut.num_vertices:
        raise PreconditionError("automaton is not connected")
    return [
        free_reduce(labels[p] + (a,) + inverse(labels[q]))
        for p, a, q in aut.arcs
        if (p, a, q) not in tree
    ]


def canonicalize(aut: Automaton) -> Automaton:
    """Renumber vertices in BFS order from the basepoint (letters a, a^-1, b, ...)."""
    order, labels, _ = _bfs(aut)
    if len(order) != aut.num_vertices:
        raise PreconditionError("only connected automata have a canonical form")
    mapping = [0] * aut.num_vertices
    for i, v in enumerate(order):
        mapping[v] = i
    return relabel(aut, mapping, aut.num_vertices)


def stallings_reduce(aut: Automaton) -> Automaton:
    """Canonical Stallings automaton of the subgroup recognized by ``aut``."""
    return canonicalize(core_trim(folded(aut)))


def stallings_of(alphabet: Alphabet, words: Iterable[Word]) -> Automaton:
    return stallings_reduce(flower(alphabet, list(words)))
