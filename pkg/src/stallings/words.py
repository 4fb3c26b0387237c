"""Alphabets and words over A±.

A letter is a nonzero int: ``i`` stands for the i-th positive letter and
``-i`` for its formal inverse.  A word is a plain tuple of letters, so words
are immutable, hashable and cheap to slice.  Reduced words and the elements
of the free group are the same tuples; the aliases below only document intent.
"""

from __future__ import annotations

import re
import string
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

from .errors import WordParseError

Word = tuple[int, ...]
ReducedWord = Word
IDENTITY: Word = ()

_NAME_RE = re.compile(r"[a-z][a-z0-9_]*\Z")
_COMPACT_TOKEN = re.compile(r"([A-Za-z])(?:\^(-?\d+))?")
_SEPARATORS = " \t\r\n.*"


@dataclass(frozen=True)
class Alphabet:
    """The positive letters ``a_1..a_n`` of a free basis, by name.

    Alphabets whose names are all single lowercase characters use the compact
    text format (``aBa``: uppercase is the inverse).  Any other alphabet uses
    the verbose format ``a3.a1^-1``.
    """

    names: tuple[str, ...]

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if not names:
            raise ValueError("an alphabet needs at least one letter")
        if len(set(names)) != len(names):
            raise ValueError(f"letter names must be distinct: {names}")
        for name in names:
            if not _NAME_RE.match(name):
                raise ValueError(f"invalid letter name {name!r}")

    @classmethod
    def standard(cls, n: int) -> "Alphabet":
        if n < 1:
            raise ValueError("an alphabet needs at least one letter")
        if n <= 26:
            return cls(tuple(string.ascii_lowercase[:n]))
        return cls(tuple(f"a{i}" for i in range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def compact(self) -> bool:
        return all(len(name) == 1 for name in self.names)

    def letters(self) -> tuple[int, ...]:
        """All of A± in the fixed exploration order a, a^-1, b, b^-1, ..."""
        return tuple(x for i in range(1, self.n + 1) for x in (i, -i))

    def check(self, word: Iterable[int]) -> None:
        for x in word:
            if not (isinstance(x, int) and x != 0 and abs(x) <= self.n):
                raise WordParseError(f"letter {x!r} is not in an alphabet of size {self.n}")

    def token(self, x: int) -> str:
        name = self.names[abs(x) - 1]
        if x > 0:
            return name
        return name.upper() if self.compact else f"{name}^-1"

    def format(self, word: Iterable[int]) -> str:
        word = tuple(word)
        if not word:
            return "1"
        sep = "" if self.compact else "."
        return sep.join(self.token(x) for x in word)

    def parse(self, text: str) -> Word:
        stripped = text.strip()
        if stripped in ("", "1"):
            return IDENTITY
        if self.compact:
            return self._parse_compact(stripped)
        return self._parse_verbose(stripped)

    def _expand(self, letter: int, exponent: str | None) -> Iterator[int]:
        k = 1 if exponent is None else int(exponent)
        x = letter if k > 0 else -letter
        for _ in range(abs(k)):
            yield x

    def _parse_compact(self, text: str) -> Word:
        index = {name: i + 1 for i, name in enumerate(self.names)}
        out: list[int] = []
        pos = 0
        while pos < len(text):
            if text[pos] in _SEPARATORS:
                pos += 1
                continue
            m = _COMPACT_TOKEN.match(text, pos)
            if m is None:
                raise WordParseError(f"malformed token at position {pos} in {text!r}")
            ch = m.group(1)
            if ch.lower() not in index:
                raise WordParseError(f"unknown letter {ch!r} in {text!r}")
            letter = index[ch.lower()] * (1 if ch.islower() else -1)
            out.extend(self._expand(letter, m.group(2)))
            pos = m.end()
        return tuple(out)

    def _parse_verbose(self, text: str) -> Word:
        ordered = sorted(self.names, key=len, reverse=True)
        token = re.compile(
            "(" + "|".join(map(re.escape, ordered)) + r")(?:\^(-?\d+))?(?![a-z0-9_])"
        )
        index = {name: i + 1 for i, name in enumerate(self.names)}
        out: list[int] = []
        pos = 0
        while pos < len(text):
            if text[pos] in _SEPARATORS:
                pos += 1
                continue
            m = token.match(text, pos)
            if m is None:
                bad = re.match(r"[a-z0-9_]+", text[pos:])
                if bad:
                    raise WordParseError(f"unknown letter {bad.group(0)!r} in {text!r}")
                raise WordParseError(f"malformed token at position {pos} in {text!r}")
            out.extend(self._expand(index[m.group(1)], m.group(2)))
            pos = m.end()
        return tuple(out)

    def parse_list(self, text: str) -> list[Word]:
        """Comma- or newline-separated words; blank entries are skipped."""
        items = re.split(r"[,\n]", text)
        return [self.parse(item) for item in items if item.strip()]


class CyclicDecomposition(NamedTuple):
    """``word == conjugator . core . conjugator^-1`` with no cancellation."""

    conjugator: Word
    core: Word


def inverse(word: Word) -> Word:
    return tuple(-x for x in reversed(word))


def free_reduce(word: Iterable[int]) -> Word:
    stack: list[int] = []
    for x in word:
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


def is_reduced(word: Word) -> bool:
    return all(word[i] != -word[i + 1] for i in range(len(word) - 1))


def is_cyclically_reduced(word: Word) -> bool:
    return is_reduced(word) and (len(word) < 2 or word[0] != -word[-1])


def cyclic_reduce(word: Iterable[int]) -> CyclicDecomposition:
    w = free_reduce(word)
    k = 0
    while 2 * k + 1 < len(w) and w[k] == -w[len(w) - 1 - k]:
        k += 1
    return CyclicDecomposition(w[:k], w[k : len(w) - k])


def multiply(*words: Word) -> Word:
    return free_reduce(x for w in words for x in w)


def power(word: Word, k: int) -> Word:
    base = word if k >= 0 else inverse(word)
    return free_reduce(base * abs(k))


def letter_key(x: int) -> tuple[int, bool]:
    """Sort key realising the order a < a^-1 < b < b^-1 < ..."""
    return (abs(x), x < 0)


def shortlex_key(word: Word) -> tuple:
    return (len(word), tuple(letter_key(x) for x in word))


def reduced_words(n: int, length: int) -> Iterator[Word]:
    """Every reduced word of exactly ``length`` letters, in shortlex order."""
    letters = [x for i in range(1, n + 1) for x in (i, -i)]

    def extend(prefix: Word) -> Iterator[Word]:
        if len(prefix) == length:
            yield prefix
            return
        for x in letters:
            if not prefix or prefix[-1] != -x:
                yield from extend(prefix + (x,))

    yield from extend(())


def reduced_words_upto(n: int, max_length: int) -> Iterator[Word]:
    for length in range(max_length + 1):
        yield from reduced_words(n, length)
